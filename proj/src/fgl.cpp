#include "fglthh/fgl.hpp"

#include <mutex>

#include "fglthh/errors.hpp"
#include "fglthh/linalg.hpp"

namespace fglthh {

namespace {

std::mutex cache_mutex;

Integer binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace

std::int64_t ipow(long p, int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) {
    if (r > INT64_MAX / p) throw DomainError("p^k overflows a 64-bit weight");
    r *= p;
  }
  return r;
}

RingPtr weight_ring(const std::string& symbol, int n) {
  static std::map<std::pair<std::string, int>, RingPtr> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = cache[{symbol, n}];
  if (!slot) {
    std::vector<std::int64_t> w;
    for (int k = 1; k <= n; ++k) w.push_back(k);
    slot = Ring::indexed(symbol, w);
  }
  return slot;
}

RingPtr typical_ring(const std::string& symbol, long p, int n) {
  static std::map<std::tuple<std::string, long, int>, RingPtr> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = cache[{symbol, p, n}];
  if (!slot) {
    std::vector<std::int64_t> w;
    for (int k = 1; k <= n; ++k) w.push_back(ipow(p, k) - 1);
    slot = Ring::indexed(symbol, w);
  }
  return slot;
}

std::string AExpr::to_text() const {
  std::vector<std::pair<Rational, std::string>> ts;
  for (const auto& [c, factors] : terms) {
    std::map<std::pair<int, int>, int> count;
    for (auto f : factors) ++count[f];
    std::string s;
    for (const auto& [ij, e] : count) {
      if (!s.empty()) s += "*";
      s += "a_" + std::to_string(ij.first) + std::to_string(ij.second);
      if (e > 1) s += "^" + std::to_string(e);
    }
    ts.emplace_back(Rational(c), s);
  }
  return format_sum_text(ts);
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Classical: return "classical";
    case Provenance::User: return "user";
    case Provenance::Auto: return "auto";
  }
  return "?";
}

long lazard_index(int n) {
  long q = n + 1;
  for (long p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    while (q % p == 0) q /= p;
    return q == 1 ? p : 1;
  }
  return 1;
}

const FGLaw& lazard_law_in_m(int bound) {
  static std::map<int, std::unique_ptr<FGLaw>> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(bound);
    if (it != cache.end()) return *it->second;
  }
  auto law = std::make_unique<FGLaw>(fgl_from_log(weight_ring("m", std::max(1, bound - 1)), "m", bound));
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = cache[bound];
  if (!slot) slot = std::move(law);
  return *slot;
}

GradedPoly evaluate_aexpr(const AExpr& e, const FGLaw& F) {
  GradedPoly r(F.ring());
  for (const auto& [c, factors] : e.terms) {
    GradedPoly t = GradedPoly::constant(F.ring(), Rational(c));
    for (auto [i, j] : factors) {
      if (i < 1 || j < 1) throw DomainError("a_ij needs i, j >= 1");
      if (i + j > F.bound()) throw TruncationError("a_" + std::to_string(i) + std::to_string(j) + " beyond the law's bound");
      t = t * F.a(i, j);
    }
    r += t;
  }
  return r;
}

namespace {

AExpr classical_generator(int n) {
  switch (n) {
    case 1: return {{{1, {{1, 1}}}}};
    case 2: return {{{1, {{1, 2}}}}};
    case 3: return {{{1, {{2, 2}}}, {-1, {{1, 3}}}}};
    case 4: return {{{1, {{1, 4}}}}};
  }
  throw DomainError("the classical generator table stops at weight 4");
}

// Integer combination of a_{i,n+1-i}, i <= (n+1)/2, whose m_n coefficient is -d.
AExpr auto_generator(int n) {
  std::vector<int> idx;
  std::vector<Integer> coef;
  Integer g = 0;
  for (int i = 1; 2 * i <= n + 1; ++i) {
    const Integer c = binomial(n + 1, i);
    if (idx.empty()) {
      idx.push_back(i);
      coef.push_back(1);
      g = c;
      continue;
    }
    Integer ng, s, t;
    mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (ng == g) continue;
    for (auto& k : coef) k *= s;
    idx.push_back(i);
    coef.push_back(t);
    g = ng;
  }
  if (g != lazard_index(n)) throw ContractError("binomial gcd does not match Lazard's index");
  AExpr e;
  for (std::size_t k = 0; k < idx.size(); ++k)
    if (coef[k] != 0) e.terms.push_back({coef[k], {{idx[k], n + 1 - idx[k]}}});
  return e;
}

}  // namespace

RingMap LazardBasis::x_to_m() const { return RingMap(x_ring, m_ring, x_in_m); }
RingMap LazardBasis::m_to_x() const { return RingMap(m_ring, x_ring, m_in_x); }

LazardBasis lazard_generators(int N, GeneratorSource source, const std::vector<AExpr>& user) {
  if (N < 1) throw DomainError("a Lazard basis needs at least one generator");
  if (source == GeneratorSource::Classical && N > 4)
    throw DomainError("the classical generator table covers weights 1..4 only");
  if (source == GeneratorSource::User && static_cast<int>(user.size()) < N)
    throw DomainError("user generator list shorter than the requested weight");
  LazardBasis b;
  b.max_weight = N;
  b.m_ring = weight_ring("m", N);
  b.x_ring = weight_ring("x", N);
  const FGLaw& F = lazard_law_in_m(N + 1);

  for (int n = 1; n <= N; ++n) {
    AExpr e;
    Provenance prov;
    if (source == GeneratorSource::User) {
      e = user[n - 1];
      prov = Provenance::User;
    } else if (source == GeneratorSource::Auto || n > 4) {
      e = auto_generator(n);
      prov = Provenance::Auto;
    } else {
      e = classical_generator(n);
      prov = Provenance::Classical;
    }
    GradedPoly xm = evaluate_aexpr(e, F);
    if (xm.is_zero() || !xm.is_homogeneous() || xm.weight() != n)
      throw DomainError("generator of weight " + std::to_string(n) + " is not homogeneous of that weight");
    const Rational lead = xm.coefficient(Monomial::of_generator(*b.m_ring, n - 1));
    if (abs(lead) != lazard_index(n))
      throw DomainError("x_" + std::to_string(n) + " is not a polynomial generator: m_" + std::to_string(n) +
                        " coefficient " + rational_text(lead));
    b.x_in_m.push_back(xm);
    b.x_in_a.push_back(e);
    b.provenance.push_back(prov);
  }

  // triangular inversion: m_n = (x_n - decomposables(m_1..m_{n-1})) / lead_n
  std::vector<GradedPoly> images(N, GradedPoly(b.x_ring));
  for (int n = 1; n <= N; ++n) {
    const GradedPoly& xm = b.x_in_m[n - 1];
    const Monomial mn = Monomial::of_generator(*b.m_ring, n - 1);
    const Rational lead = xm.coefficient(mn);
    GradedPoly rest = xm;
    rest.add_term(mn, -lead);
    const GradedPoly rest_x = RingMap(b.m_ring, b.x_ring, images)(rest);
    GradedPoly mx = (GradedPoly::generator(b.x_ring, n - 1) - rest_x) * (Rational(1) / lead);
    images[n - 1] = mx;
    b.m_in_x.push_back(mx);
  }
  return b;
}

Rewrite rewrite_m_to_x(const GradedPoly& p, const LazardBasis& basis) {
  if (!same_ring(p.ring(), basis.m_ring)) throw MismatchError("rewrite_m_to_x expects a polynomial in the m-basis");
  if (!p.is_zero() && p.terms().rbegin()->first.weight > basis.max_weight)
    throw TruncationError("weight exceeds the Lazard basis table");
  GradedPoly v = basis.m_to_x()(p);
  const bool integral = v.is_integral();
  return {std::move(v), integral};
}

RingMap TypicalBasis::v_to_ell() const { return RingMap(v_ring, ell_ring, v_in_ell); }
RingMap TypicalBasis::ell_to_v() const { return RingMap(ell_ring, v_ring, ell_in_v); }

TypicalBasis hazewinkel_generators(long p, int max_n) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (max_n < 1) throw DomainError("max_n must be positive");
  TypicalBasis b;
  b.p = p;
  b.max_n = max_n;
  b.ell_ring = typical_ring("ell", p, max_n);
  b.v_ring = typical_ring("v", p, max_n);
  auto v = [&](int k) { return GradedPoly::generator(b.v_ring, k - 1); };
  auto ell = [&](int k) { return GradedPoly::generator(b.ell_ring, k - 1); };
  for (int n = 1; n <= max_n; ++n) {
    GradedPoly s = v(n);
    for (int i = 1; i < n; ++i) s += b.ell_in_v[i - 1] * v(n - i).pow(static_cast<unsigned>(ipow(p, i)));
    b.ell_in_v.push_back(s * Rational(1, p));

    GradedPoly t = Rational(p) * ell(n);
    for (int i = 1; i < n; ++i) t -= ell(i) * b.v_in_ell[n - i - 1].pow(static_cast<unsigned>(ipow(p, i)));
    b.v_in_ell.push_back(t);
  }
  return b;
}

Rewrite rewrite_ell_to_v(const GradedPoly& q, const TypicalBasis& basis) {
  if (!same_ring(q.ring(), basis.ell_ring)) throw MismatchError("rewrite_ell_to_v expects a polynomial in the l-basis");
  if (!q.is_zero() && q.terms().rbegin()->first.weight > ipow(basis.p, basis.max_n) - 1)
    throw TruncationError("weight exceeds the p-typical basis table");
  GradedPoly v = basis.ell_to_v()(q);
  const bool integral = v.is_p_integral(basis.p);
  return {std::move(v), integral};
}

GradedPoly hazewinkel_residual(const TypicalBasis& basis, int n) {
  if (n < 1 || n > basis.max_n) throw TruncationError("index outside the p-typical table");
  // evaluate in the l-basis: p l_n - sum_i l_i v_{n-i}(l)^{p^i}
  GradedPoly r = Rational(basis.p) * GradedPoly::generator(basis.ell_ring, n - 1);
  for (int i = 0; i < n; ++i) {
    GradedPoly li = i == 0 ? GradedPoly::constant(basis.ell_ring, 1) : GradedPoly::generator(basis.ell_ring, i - 1);
    r -= li * basis.v_in_ell[n - i - 1].pow(static_cast<unsigned>(ipow(basis.p, i)));
  }
  return r;
}

}  // namespace fglthh
