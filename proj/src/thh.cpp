#include "fglthh/thh.hpp"

#include <algorithm>
#include <functional>

#include "fglthh/errors.hpp"

namespace fglthh {

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::MUMoving: return "mu-moving";
    case Flavor::MUSplit: return "mu-split";
    case Flavor::BP: return "bp";
    case Flavor::DeRham: return "de-rham";
  }
  return "?";
}

Flavor parse_flavor(const std::string& s) {
  if (s == "mu-moving") return Flavor::MUMoving;
  if (s == "mu-split") return Flavor::MUSplit;
  if (s == "bp") return Flavor::BP;
  throw DomainError("unknown flavor '" + s + "'");
}

std::int64_t ExtKind::degree(int n) const {
  if (flavor == Flavor::BP) return 2 * ipow(p, n) - 1;
  if (flavor == Flavor::DeRham) return 2 * forms->gen(static_cast<std::size_t>(n - 1)).weight + 1;
  return 2 * static_cast<std::int64_t>(n) + 1;
}

std::string ExtKind::name(int n) const {
  switch (flavor) {
    case Flavor::MUMoving: return "lambda'_" + std::to_string(n);
    case Flavor::MUSplit: return "e_" + std::to_string(n);
    case Flavor::BP: return "lambda_" + std::to_string(n);
    case Flavor::DeRham: return "d" + forms->gen(static_cast<std::size_t>(n - 1)).name();
  }
  return "?";
}

std::string ExtKind::tex(int n) const {
  const std::string idx = n < 10 ? std::to_string(n) : "{" + std::to_string(n) + "}";
  switch (flavor) {
    case Flavor::MUMoving: return "\\lambda'_" + idx;
    case Flavor::MUSplit: return "e_" + idx;
    case Flavor::BP: return "\\lambda_" + idx;
    case Flavor::DeRham: return "d" + forms->gen(static_cast<std::size_t>(n - 1)).tex();
  }
  return "?";
}

// ------------------------------------------------------------- ExtElement

namespace {

// Sort in place; returns the sign of the permutation, or 0 on a repeat.
int sort_sign(IndexSet& s) {
  int sign = 1;
  for (std::size_t i = 1; i < s.size(); ++i)
    for (std::size_t j = i; j > 0 && s[j - 1] >= s[j]; --j) {
      if (s[j - 1] == s[j]) return 0;
      std::swap(s[j - 1], s[j]);
      sign = -sign;
    }
  return sign;
}

GradedPoly rewrite_coefficient(const GradedPoly& c, const RingMap& to_base, long p, const std::string& what) {
  GradedPoly r = to_base(c);
  const bool ok = p == 0 ? r.is_integral() : r.is_p_integral(p);
  if (!ok) throw IntegralityError(what + " has non-integral coefficient " + r.to_text());
  return r;
}

}  // namespace

ExtElement ExtElement::from_base(const GradedPoly& p, ExtKind kind) {
  ExtElement e(p.ring(), kind);
  e.add({}, p);
  return e;
}

ExtElement ExtElement::generator(RingPtr base, ExtKind kind, int n) {
  if (n < 1) throw DomainError("exterior generators are indexed from 1");
  return term(GradedPoly::constant(base, 1), kind, {n});
}

ExtElement ExtElement::term(const GradedPoly& coeff, ExtKind kind, IndexSet indices) {
  ExtElement e(coeff.ring(), kind);
  const int sign = sort_sign(indices);
  if (sign != 0) e.add(indices, sign > 0 ? coeff : -coeff);
  return e;
}

GradedPoly ExtElement::coefficient(const IndexSet& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? GradedPoly(base_) : it->second;
}

void ExtElement::add(const IndexSet& s, const GradedPoly& c) {
  if (!same_ring(c.ring(), base_)) throw MismatchError("exterior coefficient over the wrong base ring");
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(s, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool ExtElement::is_homogeneous() const {
  std::optional<std::int64_t> d;
  for (const auto& [s, c] : terms_) {
    if (!c.is_homogeneous()) return false;
    std::int64_t e = 2 * c.weight();
    for (int n : s) e += kind_.degree(n);
    if (d && *d != e) return false;
    d = e;
  }
  return true;
}

std::int64_t ExtElement::degree() const {
  if (is_zero() || !is_homogeneous()) throw WeightError("degree of a zero or inhomogeneous element");
  const auto& [s, c] = *terms_.begin();
  std::int64_t e = 2 * c.weight();
  for (int n : s) e += kind_.degree(n);
  return e;
}

bool ExtElement::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_integral(); });
}

void ExtElement::check_compatible(const ExtElement& o) const {
  if (!(kind_ == o.kind_)) throw MismatchError("mixing exterior elements of different flavors");
  if (!same_ring(base_, o.base_)) throw MismatchError("mixing exterior elements over different base rings");
}

ExtElement& ExtElement::operator+=(const ExtElement& o) {
  check_compatible(o);
  for (const auto& [s, c] : o.terms_) add(s, c);
  return *this;
}

ExtElement& ExtElement::operator-=(const ExtElement& o) {
  check_compatible(o);
  for (const auto& [s, c] : o.terms_) add(s, -c);
  return *this;
}

ExtElement ExtElement::operator-() const {
  ExtElement r(base_, kind_);
  for (const auto& [s, c] : terms_) r.terms_.emplace(s, -c);
  return r;
}

ExtElement operator*(const ExtElement& a, const ExtElement& b) {
  a.check_compatible(b);
  ExtElement r(a.base_, a.kind_);
  for (const auto& [s, c] : a.terms_)
    for (const auto& [t, d] : b.terms_) {
      IndexSet u = s;
      u.insert(u.end(), t.begin(), t.end());
      const int sign = sort_sign(u);
      if (sign == 0) continue;
      GradedPoly cd = c * d;
      r.add(u, sign > 0 ? cd : -cd);
    }
  return r;
}

ExtElement operator*(const GradedPoly& c, const ExtElement& a) {
  ExtElement r(a.base_, a.kind_);
  if (!same_ring(c.ring(), a.base_)) throw MismatchError("scalar over the wrong base ring");
  for (const auto& [s, d] : a.terms_) r.add(s, c * d);
  return r;
}

ExtElement operator*(const Rational& c, const ExtElement& a) {
  ExtElement r(a.base_, a.kind_);
  for (const auto& [s, d] : a.terms_) r.add(s, d * c);
  return r;
}

bool operator==(const ExtElement& a, const ExtElement& b) {
  if (!(a.kind_ == b.kind_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (auto i = a.terms_.begin(), j = b.terms_.begin(); i != a.terms_.end(); ++i, ++j)
    if (i->first != j->first || !(i->second == j->second)) return false;
  return true;
}

namespace {

std::string ext_format(const ExtElement& x, bool tex) {
  if (x.is_zero()) return "0";
  std::vector<std::pair<const IndexSet*, const GradedPoly*>> order;
  for (const auto& [s, c] : x.terms()) order.emplace_back(&s, &c);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first->size() < b.first->size(); });

  const Ring& R = *x.base();
  std::vector<std::pair<bool, std::string>> pieces;
  for (const auto& [sp, cp] : order) {
    const IndexSet& s = *sp;
    const GradedPoly& c = *cp;
    std::string ext;
    for (int n : s) {
      if (!ext.empty()) ext += tex ? " " : "*";
      ext += tex ? x.kind().tex(n) : x.kind().name(n);
    }
    if (s.empty() || c.size() == 1) {
      for (const auto& [m, a] : c.terms()) {
        std::string f = m.is_one() ? "" : (tex ? monomial_tex(R, m) : monomial_text(R, m));
        if (!ext.empty()) f = f.empty() ? ext : f + (tex ? " " : "*") + ext;
        std::vector<std::pair<Rational, std::string>> one{{abs(a), f}};
        pieces.emplace_back(a < 0, tex ? format_sum_tex(one) : format_sum_text(one));
      }
      continue;
    }
    const bool all_neg = std::all_of(c.terms().begin(), c.terms().end(), [](const auto& t) { return t.second < 0; });
    const GradedPoly shown = all_neg ? -c : c;
    pieces.emplace_back(all_neg, "(" + (tex ? shown.to_tex() : shown.to_text()) + ")" + (tex ? "" : "*") + ext);
  }
  std::string out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i == 0) out += pieces[i].first ? "-" : "";
    else out += pieces[i].first ? " - " : " + ";
    out += pieces[i].second;
  }
  return out;
}

}  // namespace

std::string ExtElement::to_text() const { return ext_format(*this, false); }
std::string ExtElement::to_tex() const { return ext_format(*this, true); }

std::vector<BasisElement> ext_basis(const RingPtr& base, const ExtKind& kind, std::int64_t d, int max_index) {
  std::vector<IndexSet> sets;
  IndexSet cur;
  std::function<void(int, std::int64_t)> walk = [&](int from, std::int64_t used) {
    sets.push_back(cur);
    for (int n = from; n <= max_index; ++n) {
      const std::int64_t e = kind.degree(n);
      if (used + e > d) break;
      cur.push_back(n);
      walk(n + 1, used + e);
      cur.pop_back();
    }
  };
  if (d >= 0) walk(1, 0);
  std::stable_sort(sets.begin(), sets.end(), [](const IndexSet& a, const IndexSet& b) { return a.size() < b.size(); });
  std::vector<BasisElement> out;
  for (const auto& s : sets) {
    std::int64_t rest = d;
    for (int n : s) rest -= kind.degree(n);
    if (rest % 2 != 0) continue;
    for (auto& m : monomials_of_weight(*base, rest / 2)) out.push_back({std::move(m), s});
  }
  return out;
}

ExtElement basis_element(const RingPtr& base, const ExtKind& kind, const BasisElement& b) {
  return ExtElement::term(GradedPoly::term(base, b.base, 1), kind, b.ext);
}

// ------------------------------------------------------------- SigmaTable

SigmaTable::SigmaTable(Flavor flavor, long p, RingPtr base, std::vector<ExtElement> on_base,
                       std::vector<ExtElement> on_ext)
    : kind_{flavor, p, flavor == Flavor::DeRham ? base : nullptr}, base_(std::move(base)), on_base_(std::move(on_base)), on_ext_(std::move(on_ext)) {
  if (on_base_.size() > base_->size()) throw MismatchError("more sigma images than base generators");
  for (const auto& e : on_base_)
    if (!(e.kind() == kind_) || !same_ring(e.base(), base_)) throw MismatchError("sigma image of the wrong flavor");
  for (const auto& e : on_ext_)
    if (!(e.kind() == kind_) || !same_ring(e.base(), base_)) throw MismatchError("sigma image of the wrong flavor");
}

const ExtElement& SigmaTable::on_base(int k) const {
  if (k < 1 || k > static_cast<int>(on_base_.size()))
    throw TruncationError("sigma unknown on base generator " + std::to_string(k));
  return on_base_[k - 1];
}

const ExtElement& SigmaTable::on_ext(int n) const {
  if (n < 1 || n > static_cast<int>(on_ext_.size()))
    throw TruncationError("sigma unknown on exterior generator " + kind_.name(n));
  return on_ext_[n - 1];
}

ExtElement SigmaTable::apply(const GradedPoly& x) const {
  if (!same_ring(x.ring(), base_)) throw MismatchError("sigma applied over the wrong base ring");
  ExtElement r(base_, kind_);
  // sigma(x) = sum_k (d x / d g_k) sigma(g_k); the base is even
  for (const auto& [m, c] : x.terms())
    for (std::size_t k = 0; k < m.exps.size(); ++k) {
      if (m.exps[k] == 0) continue;
      Monomial d = m;
      d.exps[k] -= 1;
      d.weight -= base_->gen(k).weight;
      r += GradedPoly::term(base_, d, c * m.exps[k]) * on_base(static_cast<int>(k) + 1);
    }
  return r;
}

ExtElement SigmaTable::apply(const ExtElement& x) const {
  if (!(x.kind() == kind_)) throw MismatchError("sigma table and element have different flavors");
  if (!same_ring(x.base(), base_)) throw MismatchError("sigma applied over the wrong base ring");
  ExtElement r(base_, kind_);
  const bool zero_on_ext = kind_.flavor != Flavor::MUSplit;
  for (const auto& [s, c] : x.terms()) {
    ExtElement es = ExtElement::term(GradedPoly::constant(base_, 1), kind_, s);
    ExtElement dc = apply(c);
    r += (s.size() % 2 == 0) ? dc * es : -(dc * es);
    if (zero_on_ext) {
      for (int n : s)
        if (n > ext_bound()) throw TruncationError("sigma unknown on exterior generator " + kind_.name(n));
      continue;
    }
    const std::size_t k = s.size();
    for (std::size_t i = 0; i < k; ++i) {
      const ExtElement& ds = on_ext(s[i]);
      if (ds.is_zero()) continue;
      ExtElement left = ExtElement::term(c, kind_, IndexSet(s.begin(), s.begin() + i));
      ExtElement right = ExtElement::term(GradedPoly::constant(base_, 1), kind_, IndexSet(s.begin() + i + 1, s.end()));
      ExtElement t = left * ds * right;
      r += ((k - 1 - i) % 2 == 0) ? t : -t;
    }
  }
  return r;
}

ExtElement SigmaTable::apply_left(const ExtElement& x) const {
  ExtElement r(base_, kind_);
  for (const auto& [s, c] : x.terms()) {
    ExtElement t = apply(ExtElement::term(c, kind_, s));
    r += (s.size() % 2 == 0) ? t : -t;
  }
  return r;
}

// ------------------------------------------------------ sigma on the base

ExtElement sigma_on_base(const MUAlgebroid& mu, Flavor flavor, int k) {
  const LazardBasis& b = mu.basis();
  if (k < 1 || k > b.max_weight) throw TruncationError("x_" + std::to_string(k) + " beyond the Lazard table");
  const ExtKind kind{flavor, 0};
  ExtElement r(b.x_ring, kind);
  const std::string what = "sigma(x_" + std::to_string(k) + ")";
  if (flavor == Flavor::MUMoving) {
    const GradedPoly& xm = b.x_in_m[k - 1];
    const RingMap to_x = b.m_to_x();
    for (int n = 1; n <= k; ++n)
      r.add({n}, rewrite_coefficient(xm.derivative(static_cast<std::size_t>(n - 1)), to_x, 0, what));
    return r;
  }
  if (flavor != Flavor::MUSplit) throw DomainError("sigma_on_base(MU) needs an MU flavor");
  const GradedPoly lin = mu.eta_R_x(k, true);
  for (const auto& t : split_tensor(lin, b.x_ring, "x", mu.B(), "b")) {
    const Monomial& m = t.right.terms().begin()->first;
    if (m.total_degree() != 1) continue;
    std::size_t j = 0;
    while (m.exps[j] == 0) ++j;
    r.add({mu.B()->gen(j).index}, t.left);
  }
  return r;
}

ExtElement sigma_on_base(const TypicalBasis& basis, int k) {
  if (k < 1 || k > basis.max_n) throw TruncationError("v_" + std::to_string(k) + " beyond the p-typical table");
  const ExtKind kind{Flavor::BP, basis.p};
  ExtElement r(basis.v_ring, kind);
  const GradedPoly& vl = basis.v_in_ell[k - 1];
  const RingMap to_v = basis.ell_to_v();
  for (int n = 1; n <= k; ++n)
    r.add({n}, rewrite_coefficient(vl.derivative(static_cast<std::size_t>(n - 1)), to_v, basis.p,
                                   "sigma(v_" + std::to_string(k) + ")"));
  return r;
}

std::vector<ExtElement> sigma_split_inductive(const MUAlgebroid& mu, const std::vector<ExtElement>& sigma_x) {
  const RingPtr X = mu.X();
  std::vector<ExtElement> solved;
  for (int n = 1; n <= static_cast<int>(sigma_x.size()); ++n) {
    const ExtElement& sx = sigma_x[n - 1];
    const GradedPoly lead = sx.coefficient({n});
    if (lead.is_zero() || lead.size() != 1 || !lead.terms().begin()->first.is_one())
      throw ContractError("e_" + std::to_string(n) + " does not occur in sigma(x_" + std::to_string(n) +
                          ") with a constant coefficient");
    const Rational a = lead.constant_term();
    ExtElement rest = sx;
    rest.add({n}, -lead);
    const SigmaTable partial(Flavor::MUSplit, 0, X, sigma_x, solved);
    ExtElement se = (Rational(-1) / a) * partial.apply(rest);
    if (!se.is_integral())
      throw ContractError("sigma(e_" + std::to_string(n) + ") is not integral: " + se.to_text());
    solved.push_back(std::move(se));
  }
  return solved;
}

std::vector<ExtElement> sigma_typical_recursive(const TypicalBasis& basis) {
  const long p = basis.p;
  const RingPtr V = basis.v_ring;
  const ExtKind kind{Flavor::BP, p};
  auto v = [&](int k) { return GradedPoly::generator(V, k - 1); };
  auto lam = [&](int k) { return ExtElement::generator(V, kind, k); };
  std::vector<GradedPoly> p_ell;  // p^i l_i in V
  for (int i = 1; i <= basis.max_n; ++i) {
    GradedPoly q = basis.ell_in_v[i - 1] * Rational(Integer(ipow(p, i)));
    if (!q.is_p_integral(p)) throw ContractError("p^" + std::to_string(i) + " l_" + std::to_string(i) + " is not in V");
    p_ell.push_back(std::move(q));
  }
  std::vector<ExtElement> out;
  for (int n = 1; n <= basis.max_n; ++n) {
    ExtElement s = Rational(p) * lam(n);
    for (int i = 1; i < n; ++i) {
      const unsigned pi = static_cast<unsigned>(ipow(p, i));
      s -= v(n - i).pow(pi) * lam(i);
      s -= (p_ell[i - 1] * v(n - i).pow(pi - 1)) * out[n - i - 1];
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ExtElement> lambda_in_e(const MUAlgebroid& mu) {
  const ExtKind kind{Flavor::MUSplit, 0};
  std::vector<ExtElement> out;
  for (int n = 1; n <= mu.bound(); ++n) {
    ExtElement r(mu.X(), kind);
    for (const auto& t : split_tensor(mu.moving_coordinate(n), mu.X(), "x", mu.B(), "b")) {
      const Monomial& m = t.right.terms().begin()->first;
      if (m.total_degree() != 1) continue;
      std::size_t j = 0;
      while (m.exps[j] == 0) ++j;
      r.add({mu.B()->gen(j).index}, t.left);
    }
    out.push_back(std::move(r));
  }
  return out;
}

ExtElement moving_to_split(const ExtElement& x, const std::vector<ExtElement>& lambda_e) {
  if (x.kind().flavor != Flavor::MUMoving) throw MismatchError("moving_to_split expects a moving-flavor element");
  const ExtKind kind{Flavor::MUSplit, 0};
  ExtElement r(x.base(), kind);
  for (const auto& [s, c] : x.terms()) {
    ExtElement t = ExtElement::from_base(c, kind);
    for (int n : s) {
      if (n > static_cast<int>(lambda_e.size())) throw TruncationError("lambda'_" + std::to_string(n) + " beyond the conversion table");
      t = t * lambda_e[n - 1];
    }
    r += t;
  }
  return r;
}

SigmaTable sigma_table_mu(const MUAlgebroid& mu, Flavor flavor) {
  std::vector<ExtElement> on_base;
  for (int k = 1; k <= mu.bound(); ++k) on_base.push_back(sigma_on_base(mu, flavor, k));
  std::vector<ExtElement> on_ext;
  if (flavor == Flavor::MUSplit) {
    on_ext = sigma_split_inductive(mu, on_base);
  } else {
    for (int n = 1; n <= mu.bound(); ++n) on_ext.emplace_back(mu.X(), ExtKind{flavor, 0});
  }
  return SigmaTable(flavor, 0, mu.X(), std::move(on_base), std::move(on_ext));
}

SigmaTable sigma_table_bp(const TypicalBasis& basis) {
  std::vector<ExtElement> rational;
  for (int k = 1; k <= basis.max_n; ++k) rational.push_back(sigma_on_base(basis, k));
  const auto recursive = sigma_typical_recursive(basis);
  for (int k = 1; k <= basis.max_n; ++k)
    if (!(rational[k - 1] == recursive[k - 1]))
      throw ContractError("the two routes to sigma(v_" + std::to_string(k) + ") disagree: " + rational[k - 1].to_text() +
                          " vs " + recursive[k - 1].to_text());
  std::vector<ExtElement> on_ext;
  for (int n = 1; n <= basis.max_n; ++n) on_ext.emplace_back(basis.v_ring, ExtKind{Flavor::BP, basis.p});
  return SigmaTable(Flavor::BP, basis.p, basis.v_ring, std::move(rational), std::move(on_ext));
}

// --------------------------------------------------------------- Hurewicz

Rewrite hurewicz_map(const LazardBasis& basis, const GradedPoly& x) {
  if (!same_ring(x.ring(), basis.x_ring)) throw MismatchError("hurewicz_map expects a polynomial in the x-basis");
  const RingPtr C = weight_ring("c", basis.max_weight);
  const RingMap m_to_c = RingMap::renaming(basis.m_ring, C, [&](const Generator& g) { return C->find("c", g.index); });
  GradedPoly h = m_to_c(basis.x_to_m()(x));
  const bool ok = h.is_integral();
  return {std::move(h), ok};
}

Rewrite hurewicz_map(const TypicalBasis& basis, const GradedPoly& v) {
  if (!same_ring(v.ring(), basis.v_ring)) throw MismatchError("hurewicz_map expects a polynomial in the v-basis");
  const RingPtr T = typical_ring("t", basis.p, basis.max_n);
  const RingMap l_to_t = RingMap::renaming(basis.ell_ring, T, [&](const Generator& g) { return T->find("t", g.index); });
  GradedPoly h = l_to_t(basis.v_to_ell()(v));
  const bool ok = h.is_p_integral(basis.p);
  return {std::move(h), ok};
}

}  // namespace fglthh
