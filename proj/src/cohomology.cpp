#include "fglthh/cohomology.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <future>
#include <thread>

#include "fglthh/errors.hpp"

namespace fglthh {

unsigned thread_cap() {
  if (const char* env = std::getenv("FGLTHH_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

template <class F>
void parallel_for(std::size_t n, F f) {
  const std::size_t workers = std::min<std::size_t>(thread_cap(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> futs;
  for (std::size_t w = 0; w < workers; ++w)
    futs.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < n; i = next++) f(i);
    }));
  for (auto& fu : futs) fu.get();
}

using BasisKey = std::pair<IndexSet, std::vector<std::uint32_t>>;

std::int64_t ext_weight(const ExtKind& kind, int n) { return (kind.degree(n) - 1) / 2; }

}  // namespace

// ------------------------------------------------------------ differentials

Differential sigma_differential(const SigmaTable& t) {
  auto table = std::make_shared<SigmaTable>(t);
  Differential d;
  d.base = t.base();
  d.kind = t.kind();
  d.max_index = t.ext_bound();
  if (t.flavor() == Flavor::BP) {
    int n = 0;
    while (n < d.max_index && n < static_cast<int>(t.base()->size())) ++n;
    d.max_weight = ipow(t.prime(), n + 1) - 2;
  } else {
    d.max_weight = std::min<std::int64_t>(static_cast<std::int64_t>(t.base()->size()), t.ext_bound());
  }
  d.apply = [table](const ExtElement& x) { return table->apply(x); };
  return d;
}

Differential de_rham_differential(const RingPtr& ring) {
  const ExtKind kind{Flavor::DeRham, 0, ring};
  std::vector<ExtElement> on_base, on_ext;
  for (std::size_t i = 0; i < ring->size(); ++i) {
    on_base.push_back(ExtElement::generator(ring, kind, static_cast<int>(i) + 1));
    on_ext.emplace_back(ring, kind);
  }
  auto table = std::make_shared<SigmaTable>(Flavor::DeRham, 0, ring, std::move(on_base), std::move(on_ext));
  Differential d;
  d.base = ring;
  d.kind = table->kind();
  d.max_index = static_cast<int>(ring->size());
  d.max_weight = INT64_MAX / 4;
  d.apply = [table](const ExtElement& x) { return table->apply_left(x); };
  return d;
}

Differential rational_moving_differential(int N) {
  const RingPtr M = weight_ring("m", N);
  const ExtKind kind{Flavor::MUMoving, 0};
  std::vector<ExtElement> on_base, on_ext;
  for (int n = 1; n <= N; ++n) {
    on_base.push_back(ExtElement::generator(M, kind, n));
    on_ext.emplace_back(M, kind);
  }
  auto table = std::make_shared<SigmaTable>(Flavor::MUMoving, 0, M, std::move(on_base), std::move(on_ext));
  Differential d;
  d.base = M;
  d.kind = kind;
  d.max_index = N;
  d.max_weight = N;
  d.apply = [table](const ExtElement& x) { return table->apply(x); };
  return d;
}

// ---------------------------------------------------------- weight complex

std::vector<Integer> WeightComplex::coordinates(const ExtElement& x, int q) const {
  if (q < 0 || q >= static_cast<int>(bases.size())) throw MismatchError("exterior count outside the complex");
  const auto& B = bases[q];
  std::map<BasisKey, std::size_t> index;
  for (std::size_t i = 0; i < B.size(); ++i) index.emplace(BasisKey{B[i].ext, B[i].base.exps}, i);
  std::vector<Integer> v(B.size());
  for (const auto& [s, c] : x.terms())
    for (const auto& [m, a] : c.terms()) {
      auto it = index.find({s, m.exps});
      if (it == index.end()) throw MismatchError("element is not in the weight-" + std::to_string(weight) + " complex");
      if (a.get_den() != 1) throw IntegralityError("non-integral coordinate " + rational_text(a));
      v[it->second] = a.get_num();
    }
  return v;
}

ExtElement WeightComplex::element(const std::vector<Integer>& v, int q) const {
  ExtElement r(base, kind);
  const auto& B = bases.at(static_cast<std::size_t>(q));
  for (std::size_t i = 0; i < B.size() && i < v.size(); ++i)
    if (v[i] != 0) r += ExtElement::term(GradedPoly::term(base, B[i].base, Rational(v[i])), kind, B[i].ext);
  return r;
}

IntMatrix WeightComplex::d_at(int q) const {
  const int n = static_cast<int>(bases.size());
  if (q < 0) return IntMatrix(n > 0 ? bases[0].size() : 0, 0);
  if (q >= n) return IntMatrix(0, 0);
  if (q + 1 >= n) return IntMatrix(0, bases[q].size());
  return d[q];
}

WeightComplex assemble_weight_complex(const Differential& D, std::int64_t W) {
  if (W < 0) throw DomainError("negative weight");
  if (W > D.max_weight)
    throw TruncationError("weight " + std::to_string(W) + " exceeds the truncation (largest weight " +
                          std::to_string(D.max_weight) + ")");
  WeightComplex wc;
  wc.weight = W;
  wc.kind = D.kind;
  wc.base = D.base;
  for (int q = 0;; ++q) {
    std::int64_t least = 0;
    for (int n = 1; n <= q; ++n) least += n <= D.max_index ? ext_weight(D.kind, n) : W + 1;
    if (q > 0 && least > W) break;
    std::vector<BasisElement> B;
    for (auto& b : ext_basis(D.base, D.kind, 2 * W + q, D.max_index))
      if (static_cast<int>(b.ext.size()) == q) B.push_back(std::move(b));
    wc.bases.push_back(std::move(B));
  }
  for (std::size_t q = 0; q + 1 < wc.bases.size(); ++q) {
    const auto& src = wc.bases[q];
    const auto& tgt = wc.bases[q + 1];
    std::map<BasisKey, std::size_t> index;
    for (std::size_t i = 0; i < tgt.size(); ++i) index.emplace(BasisKey{tgt[i].ext, tgt[i].base.exps}, i);
    IntMatrix M(tgt.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      const ExtElement y = D.apply(basis_element(D.base, D.kind, src[j]));
      for (const auto& [s, c] : y.terms())
        for (const auto& [m, a] : c.terms()) {
          auto it = index.find({s, m.exps});
          if (it == index.end()) throw ContractError("differential leaves the weight-" + std::to_string(W) + " complex");
          if (a.get_den() != 1) throw IntegralityError("differential has non-integral entry " + rational_text(a));
          M.at(it->second, j) = a.get_num();
        }
    }
    wc.d.push_back(std::move(M));
  }
  for (std::size_t q = 0; q + 1 < wc.d.size(); ++q)
    if (!(wc.d[q + 1] * wc.d[q]).is_zero())
      throw ContractError("d^2 != 0 in weight " + std::to_string(W) + " at exterior count " + std::to_string(q));
  return wc;
}

DegreeComplex assemble_complex(const Differential& D, std::int64_t degree) {
  if (degree < 0) throw DomainError("negative degree");
  DegreeComplex dc;
  dc.degree = degree;
  dc.kind = D.kind;
  for (int q = static_cast<int>(degree % 2); q <= degree; q += 2) {
    const std::int64_t W = (degree - q) / 2;
    const WeightComplex wc = assemble_weight_complex(D, W);
    if (q >= static_cast<int>(wc.bases.size())) continue;
    dc.counts.push_back(q);
    dc.bases.push_back(wc.bases[q]);
    dc.d_in.push_back(wc.d_at(q - 1));
    dc.d_out.push_back(wc.d_at(q));
  }
  return dc;
}

// ------------------------------------------------------------- cohomology

namespace {

Integer p_part(const Integer& o, long p) {
  Integer r = 1, x = o;
  while (x != 0 && mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p))) {
    x /= p;
    r *= p;
  }
  return r;
}

CohomologyPiece piece_of(const WeightComplex& wc, int q, long p) {
  const Subquotient sq(wc.d_at(q - 1), wc.d_at(q));
  CohomologyPiece piece;
  piece.weight = wc.weight;
  piece.q = q;
  piece.group = p == 0 ? sq.group() : localize(sq.group(), p);
  for (const auto& g : sq.generators()) {
    ExtElement z = wc.element(g.lift, q);
    if (p == 0 || g.order == 0) {
      piece.generators.push_back({g.order, std::move(z)});
      continue;
    }
    const Integer pp = p_part(g.order, p);
    if (pp == 1) continue;
    piece.generators.push_back({pp, Rational(g.order / pp) * z});
  }
  return piece;
}

}  // namespace

CohomologyTable cohomology_groups(const Differential& D, std::int64_t d_max, long p) {
  if (d_max < 0) throw DomainError("negative degree bound");
  const std::int64_t W_max = d_max / 2;
  if (W_max > D.max_weight)
    throw TruncationError("degree " + std::to_string(d_max) + " needs weight " + std::to_string(W_max) +
                          " but the tables stop at " + std::to_string(D.max_weight));
  std::vector<std::vector<CohomologyPiece>> by_weight(static_cast<std::size_t>(W_max + 1));
  parallel_for(by_weight.size(), [&](std::size_t w) {
    const WeightComplex wc = assemble_weight_complex(D, static_cast<std::int64_t>(w));
    for (int q = 0; q < static_cast<int>(wc.bases.size()) && wc.degree(q) <= d_max; ++q)
      by_weight[w].push_back(piece_of(wc, q, p));
  });
  CohomologyTable t;
  t.kind = D.kind;
  t.p = p;
  for (std::int64_t d = 0; d <= d_max; ++d) {
    DegreeCohomology dc;
    dc.degree = d;
    for (int q = static_cast<int>(d % 2); q <= d; q += 2) {
      const auto& pieces = by_weight[static_cast<std::size_t>((d - q) / 2)];
      for (const auto& pc : pieces)
        if (pc.q == q) {
          dc.group = direct_sum(dc.group, pc.group);
          if (!pc.group.is_zero()) dc.pieces.push_back(pc);
        }
    }
    t.degrees.push_back(std::move(dc));
  }
  return t;
}

CohomologyTable cohomology_groups(const SigmaTable& t, std::int64_t d_max) {
  return cohomology_groups(sigma_differential(t), d_max, t.flavor() == Flavor::BP ? t.prime() : 0);
}

std::vector<FinAbGroup> bp_expected_table(long p) {
  const std::int64_t top = 2 * p * p + 4 * p - 6;
  std::vector<FinAbGroup> g(static_cast<std::size_t>(top + 1));
  auto set = [&](std::int64_t d, Integer order) { g.at(static_cast<std::size_t>(d)) = group_from_orders({order}); };
  g[0].free_rank = 1;
  for (long i = 1; i <= p - 1; ++i) set(i * (2 * p - 2) + 1, p);
  set(2 * p * p - 2 * p + 1, Integer(p * p));
  set(2 * p * p - 1, Integer(p * p));
  set(2 * p * p + 2 * p - 3, p == 2 ? Integer(16) : Integer(p * p));
  set(2 * p * p + 2 * p - 2, p);
  return g;
}

CohomologyTable bp_cohomology_table(long p, bool allow_large) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (!allow_large && p != 2 && p != 3 && p != 5)
    throw DomainError("primes above 5 are outside the supported range");
  const SigmaTable t = sigma_table_bp(hazewinkel_generators(p, 2));
  return cohomology_groups(t, 2 * p * p + 4 * p - 6);
}

GeneratorCheck verify_generators(const Differential& D, std::int64_t degree, int q, const std::vector<ExtElement>& gens,
                                 const std::vector<Integer>& expected_orders, long p) {
  if (q < 0 || (degree - q) % 2 != 0 || degree < q) throw DomainError("degree and exterior count have different parity");
  const WeightComplex wc = assemble_weight_complex(D, (degree - q) / 2);
  if (q >= static_cast<int>(wc.bases.size())) throw DomainError("no basis elements with this exterior count");
  const Subquotient sq(wc.d_at(q - 1), wc.d_at(q));
  GeneratorCheck r;
  std::vector<std::vector<Integer>> coords;
  r.cocycles = true;
  for (const auto& g : gens) {
    const auto z = wc.coordinates(g, q);
    if (!sq.is_cocycle(z)) r.cocycles = false;
    coords.push_back(z);
  }
  if (!r.cocycles) return r;

  // summand orders, projected to the p-part when localizing (0 = free)
  std::vector<Integer> mods;
  for (const auto& cg : sq.generators()) mods.push_back(p == 0 || cg.order == 0 ? cg.order : p_part(cg.order, p));
  std::vector<std::vector<Integer>> cls;
  for (const auto& z : coords) {
    auto c = sq.coordinates(z);
    for (std::size_t j = 0; j < c.size(); ++j)
      if (mods[j] != 0) c[j] = ((c[j] % mods[j]) + mods[j]) % mods[j];
    Integer order = 1;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] == 0) continue;
      if (mods[j] == 0) {
        order = 0;
        break;
      }
      Integer g, o;
      mpz_gcd(g.get_mpz_t(), c[j].get_mpz_t(), mods[j].get_mpz_t());
      o = mods[j] / g;
      mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), o.get_mpz_t());
    }
    r.orders.push_back(order);
    cls.push_back(std::move(c));
  }
  r.orders_match = r.orders == expected_orders;

  std::vector<std::size_t> rows;
  for (std::size_t j = 0; j < mods.size(); ++j)
    if (mods[j] != 1) rows.push_back(j);
  IntMatrix A(rows.size(), gens.size() + rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < gens.size(); ++k) A.at(i, k) = cls[k][rows[i]];
    A.at(i, gens.size() + i) = mods[rows[i]];
  }
  const auto diag = smith_diagonal(A);
  r.generates = diag.size() == rows.size() && std::all_of(diag.begin(), diag.end(), [](const Integer& x) { return x == 1; });
  return r;
}

// --------------------------------------------------------- rational checks

bool degree10_injectivity_check() {
  const WeightComplex wc = assemble_weight_complex(rational_moving_differential(5), 5);
  if (wc.bases.size() < 2 || wc.bases[0].size() != 7) return false;
  return smith_diagonal(wc.d[0]).size() == wc.bases[0].size();
}

RationalReport rational_collapse_check(const CohomologyTable& t) {
  RationalReport r;
  r.collapses = !t.degrees.empty();
  for (const auto& d : t.degrees) {
    r.free_ranks.push_back(d.group.free_rank);
    if (d.group.free_rank != (d.degree == 0 ? 1u : 0u)) r.collapses = false;
  }
  const bool mu = t.kind.flavor == Flavor::MUMoving || t.kind.flavor == Flavor::MUSplit;
  if (mu && t.degrees.size() > 10) r.degree10_injective = degree10_injectivity_check();
  return r;
}

// ----------------------------------------------------------------- bar-Tor

namespace {

using Word = std::vector<std::vector<std::uint32_t>>;

void words(const Ring& R, int q, std::int64_t w, Word& cur, std::vector<std::pair<Word, std::vector<Monomial>>>& out,
           std::vector<Monomial>& mons) {
  if (q == 0) {
    if (w == 0) out.emplace_back(cur, mons);
    return;
  }
  for (std::int64_t k = 1; k <= w; ++k)
    for (const auto& m : monomials_of_weight(R, k)) {
      cur.push_back(m.exps);
      mons.push_back(m);
      words(R, q - 1, w - k, cur, out, mons);
      cur.pop_back();
      mons.pop_back();
    }
}

}  // namespace

std::vector<BarTorEntry> bar_tor(const RingPtr& A, std::int64_t weight_max, int q_max) {
  if (q_max > 3 || weight_max > 8) throw DomainError("bar-Tor is limited to q <= 3 and weight <= 8");
  std::vector<BarTorEntry> out;
  for (std::int64_t w = 0; w <= weight_max; ++w) {
    // B_q(w) for q = 0..q_max+1
    std::vector<std::vector<std::pair<Word, std::vector<Monomial>>>> B(static_cast<std::size_t>(q_max + 2));
    for (int q = 0; q <= q_max + 1; ++q) {
      Word cur;
      std::vector<Monomial> mons;
      words(*A, q, w, cur, B[q], mons);
    }
    // d_q : B_q -> B_{q-1}
    std::vector<std::vector<Integer>> diag(static_cast<std::size_t>(q_max + 2));
    for (int q = 2; q <= q_max + 1; ++q) {
      std::map<Word, std::size_t> index;
      for (std::size_t i = 0; i < B[q - 1].size(); ++i) index.emplace(B[q - 1][i].first, i);
      IntMatrix M(B[q - 1].size(), B[q].size());
      for (std::size_t j = 0; j < B[q].size(); ++j) {
        const auto& ms = B[q][j].second;
        for (int i = 1; i < q; ++i) {
          Word merged;
          for (int k = 0; k < q; ++k) {
            if (k == i) continue;
            merged.push_back(k == i - 1 ? (ms[k] * ms[k + 1]).exps : ms[k].exps);
          }
          M.at(index.at(merged), j) += (i % 2 == 0) ? 1 : -1;
        }
      }
      diag[q] = smith_diagonal(M);
    }
    for (int q = 0; q <= q_max; ++q) {
      BarTorEntry e;
      e.q = q;
      e.weight = w;
      e.rank = B[q].size() - diag[q].size() - diag[q + 1].size();
      for (const auto& x : diag[q + 1])
        if (x > 1) e.torsion.push_back(x);
      // q-subsets of generators of total weight w
      std::function<std::size_t(std::size_t, int, std::int64_t)> count = [&](std::size_t from, int k, std::int64_t rest) {
        if (k == 0) return static_cast<std::size_t>(rest == 0);
        std::size_t c = 0;
        for (std::size_t i = from; i < A->size(); ++i)
          if (A->gen(i).weight <= rest) c += count(i + 1, k - 1, rest - A->gen(i).weight);
        return c;
      };
      e.expected_rank = count(0, q, w);
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<BarTorEntry> bar_tor_check(Coalgebra which, std::int64_t weight_max, int q_max, long p) {
  switch (which) {
    case Coalgebra::C: return bar_tor(weight_ring("c", static_cast<int>(std::max<std::int64_t>(1, weight_max))), weight_max, q_max);
    case Coalgebra::B: return bar_tor(weight_ring("b", static_cast<int>(std::max<std::int64_t>(1, weight_max))), weight_max, q_max);
    case Coalgebra::T: {
      int n = 1;
      while (ipow(p, n + 1) - 1 <= weight_max) ++n;
      return bar_tor(typical_ring("t", p, n), weight_max, q_max);
    }
  }
  return {};
}

// --------------------------------------------------------------- de Rham

CohomologyTable de_rham_cohomology(const std::vector<std::int64_t>& weights, std::int64_t d_max) {
  if (weights.empty()) throw DomainError("de Rham complex needs at least one generator");
  return cohomology_groups(de_rham_differential(Ring::indexed("x", weights)), d_max);
}

namespace {

// Classes of one degree, piece by piece, with coordinates concatenated.
struct DegreeClasses {
  struct Piece {
    int q;
    WeightComplex wc;
    Subquotient sq;
  };
  FinAbGroup group;
  std::vector<Piece> pieces;
  std::vector<ExtElement> generators;

  DegreeClasses(const Differential& D, std::int64_t d) {
    for (int q = static_cast<int>(d % 2); q <= d; q += 2) {
      WeightComplex wc = assemble_weight_complex(D, (d - q) / 2);
      if (q >= static_cast<int>(wc.bases.size())) continue;
      Subquotient sq(wc.d_at(q - 1), wc.d_at(q));
      group = direct_sum(group, sq.group());
      for (const auto& g : sq.generators()) generators.push_back(wc.element(g.lift, q));
      pieces.push_back({q, std::move(wc), std::move(sq)});
    }
  }

  std::vector<Integer> coordinates(const ExtElement& x) const {
    std::vector<Integer> out;
    for (const auto& pc : pieces) {
      ExtElement part(x.base(), x.kind());
      for (const auto& [s, c] : x.terms())
        if (static_cast<int>(s.size()) == pc.q) part.add(s, c);
      const auto c = pc.sq.coordinates(pc.wc.coordinates(part, pc.q));
      out.insert(out.end(), c.begin(), c.end());
    }
    return out;
  }
};

}  // namespace

InclusionReport de_rham_inclusions(const MUAlgebroid& mu, std::int64_t max_degree) {
  const int N = mu.bound();
  if (max_degree / 2 > N)
    throw TruncationError("degree " + std::to_string(max_degree) + " needs the tables to weight " +
                          std::to_string(max_degree / 2));
  const RingPtr X = mu.X();
  const RingPtr C = weight_ring("c", N);
  const SigmaTable thh = sigma_table_mu(mu, Flavor::MUMoving);
  const Differential dL = de_rham_differential(X);
  const Differential dC = de_rham_differential(C);
  const Differential mid = sigma_differential(thh);
  const ExtKind kC = dC.kind;

  auto iota = [&](const ExtElement& w) {
    ExtElement r(X, thh.kind());
    for (const auto& [s, f] : w.terms()) {
      ExtElement t = ExtElement::from_base(f, thh.kind());
      for (int n : s) t = t * thh.on_base(n);
      r += t;
    }
    return r;
  };
  auto j = [&](const ExtElement& y) {
    ExtElement r(C, kC);
    for (const auto& [s, f] : y.terms()) {
      const Rewrite h = hurewicz_map(mu.basis(), f);
      if (!h.integral) throw IntegralityError("Hurewicz image of " + f.to_text() + " is not integral");
      r += ExtElement::term(h.value, kC, s);
    }
    return r;
  };

  InclusionReport rep;
  rep.max_degree = max_degree;
  for (std::int64_t d = 0; d <= max_degree; ++d) {
    for (const auto& b : ext_basis(X, dL.kind, d, N)) {
      const ExtElement w = basis_element(X, dL.kind, b);
      ++rep.checked;
      if (!(iota(dL.apply(w)) == thh.apply_left(iota(w)))) ++rep.residual_first;
    }
    for (const auto& b : ext_basis(X, thh.kind(), d, thh.ext_bound())) {
      const ExtElement y = basis_element(X, thh.kind(), b);
      ++rep.checked;
      if (!(j(thh.apply_left(y)) == dC.apply(j(y)))) ++rep.residual_second;
    }
    const DegreeClasses src(dL, d), middle(mid, d), tgt(dC, d);
    InclusionReport::Induced ind{d, src.group, middle.group, tgt.group, {}, {}};
    for (const auto& g : src.generators) ind.first.push_back(middle.coordinates(iota(g)));
    for (const auto& g : middle.generators) ind.second.push_back(tgt.coordinates(j(g)));
    rep.induced.push_back(std::move(ind));
  }
  return rep;
}

}  // namespace fglthh
