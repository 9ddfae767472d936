#include "fglthh/algebroid.hpp"

#include <set>

#include "fglthh/errors.hpp"

namespace fglthh {

namespace {

std::vector<GradedPoly> generators_of(const RingPtr& r, const std::string& symbol, int n) {
  std::vector<GradedPoly> out;
  for (int k = 1; k <= n; ++k) out.push_back(GradedPoly::generator(r, symbol, k));
  return out;
}

// Predicate: at most `max_deg` factors from generators with the given symbol.
std::function<bool(const Monomial&)> symbol_degree_at_most(const RingPtr& ring, const std::string& symbol,
                                                           unsigned max_deg) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < ring->size(); ++i)
    if (ring->gen(i).symbol == symbol) idx.push_back(i);
  return [idx, max_deg](const Monomial& m) {
    unsigned d = 0;
    for (auto i : idx) d += m.exps[i];
    return d <= max_deg;
  };
}

void require_integral(const GradedPoly& p, const std::string& what) {
  if (!p.is_integral()) throw IntegralityError(what + " is not integral: " + p.to_text());
}

}  // namespace

// ------------------------------------------------------------ tensor view

std::vector<TensorTerm> split_tensor(const GradedPoly& p, const RingPtr& left, const std::string& left_symbol,
                                     const RingPtr& right, const std::string& right_symbol) {
  const RingPtr& src = p.ring();
  std::map<Monomial, GradedPoly> groups;
  for (const auto& [m, c] : p.terms()) {
    Monomial l = Monomial::one(*left);
    Monomial r = Monomial::one(*right);
    for (std::size_t i = 0; i < src->size(); ++i) {
      if (m.exps[i] == 0) continue;
      const Generator& g = src->gen(i);
      if (g.symbol == left_symbol) {
        auto j = left->find(left->gen(0).symbol, g.index);
        if (!j) throw MismatchError("left factor lacks " + g.name());
        l = l * Monomial::of_generator(*left, *j, m.exps[i]);
      } else if (g.symbol == right_symbol) {
        auto j = right->find(right->gen(0).symbol, g.index);
        if (!j) throw MismatchError("right factor lacks " + g.name());
        r = r * Monomial::of_generator(*right, *j, m.exps[i]);
      } else {
        throw MismatchError("generator " + g.name() + " belongs to neither tensor factor");
      }
    }
    auto it = groups.try_emplace(r, GradedPoly(left)).first;
    it->second.add_term(l, c);
  }
  std::vector<TensorTerm> out;
  for (auto& [r, l] : groups) out.push_back({l, GradedPoly::term(right, r, 1)});
  return out;
}

namespace {

std::string tensor_format(const std::vector<TensorTerm>& terms, bool tex) {
  if (terms.empty()) return "0";
  const std::string otimes = tex ? " \\otimes " : " (x) ";
  std::string s;
  for (const auto& t : terms) {
    const auto& r = t.right.terms().begin()->first;
    const std::string right = r.is_one() ? "1" : (tex ? monomial_tex(*t.right.ring(), r) : monomial_text(*t.right.ring(), r));
    std::string left;
    bool neg = false;
    if (t.left.size() == 1) {
      const auto& [m, c] = *t.left.terms().begin();
      neg = c < 0;
      std::string mono = m.is_one() ? "" : (tex ? monomial_tex(*t.left.ring(), m) : monomial_text(*t.left.ring(), m));
      std::vector<std::pair<Rational, std::string>> one{{abs(c), mono}};
      left = tex ? format_sum_tex(one) : format_sum_text(one);
    } else {
      left = "(" + (tex ? t.left.to_tex() : t.left.to_text()) + ")";
    }
    if (s.empty()) s = neg ? "-" : "";
    else s += neg ? " - " : " + ";
    s += left + otimes + right;
  }
  return s;
}

}  // namespace

std::string tensor_text(const std::vector<TensorTerm>& terms) { return tensor_format(terms, false); }
std::string tensor_tex(const std::vector<TensorTerm>& terms) { return tensor_format(terms, true); }

// ------------------------------------------------------------ MUAlgebroid

MUAlgebroid::MUAlgebroid(int N, GeneratorSource source, const std::vector<AExpr>& user)
    : N_(N), basis_(lazard_generators(N, source, user)) {
  B_ = weight_ring("b", N);
  C_ = weight_ring("c", N);
  MB_ = Ring::join({M(), B_});
  XB_ = Ring::join({X(), B_});
  MC_ = Ring::join({M(), C_});
  XC_ = Ring::join({X(), C_});
  BB_ = Ring::join({weight_ring("bL", N), weight_ring("bR", N)});

  const Series f = Series::strict(B_, N + 1, generators_of(B_, "b", N));
  const Series fbar = comp_inverse(f);
  for (int n = 1; n <= N; ++n) bbar_.push_back(fbar.coeff(n + 1));

  const Series log = Series::strict(M(), N + 1, generators_of(M(), "m", N));
  const Series exp = comp_inverse(log);
  for (int n = 1; n <= N; ++n) mbar_.push_back(exp.coeff(n + 1));

  // eta_R(m_n) = sum_i m_i [x^{n+1}] fbar^{i+1}
  const RingMap b_in = RingMap::inclusion(B_, MB_);
  const auto linear = symbol_degree_at_most(MB_, "b", 1);
  std::vector<Series> powers{fbar};
  for (int k = 2; k <= N + 1; ++k) powers.push_back(powers.back() * fbar);
  for (int n = 1; n <= N; ++n) {
    GradedPoly e = b_in(powers[0].coeff(n + 1));
    for (int i = 1; i <= n; ++i) e += GradedPoly::generator(MB_, "m", i) * b_in(powers[i].coeff(n + 1));
    eta_m_linear_.push_back(e.filtered(linear));
    eta_m_.push_back(std::move(e));
  }
}

void MUAlgebroid::require(int n) const {
  if (n < 1 || n > N_) throw TruncationError("index " + std::to_string(n) + " outside the table bound " + std::to_string(N_));
}

const GradedPoly& MUAlgebroid::conjugate_b(int n) const {
  require(n);
  return bbar_[n - 1];
}

const GradedPoly& MUAlgebroid::exp_coefficient(int n) const {
  require(n);
  return mbar_[n - 1];
}

const GradedPoly& MUAlgebroid::eta_R_m(int n) const {
  require(n);
  return eta_m_[n - 1];
}

GradedPoly MUAlgebroid::eta_R_m_moving(int n) const {
  require(n);
  GradedPoly r(MC_);
  for (int i = 0; i <= n; ++i) {
    if ((n + 1) % (i + 1) != 0) continue;
    const int j = (n + 1) / (i + 1) - 1;
    GradedPoly mi = i == 0 ? GradedPoly::constant(MC_, 1) : GradedPoly::generator(MC_, "m", i);
    GradedPoly cj = j == 0 ? GradedPoly::constant(MC_, 1) : GradedPoly::generator(MC_, "c", j);
    r += mi * cj.pow(static_cast<unsigned>(i + 1));
  }
  return r;
}

GradedPoly MUAlgebroid::to_x(const GradedPoly& mb) const {
  std::vector<GradedPoly> images;
  const RingMap x_in = RingMap::inclusion(X(), XB_);
  for (const auto& g : MB_->generators()) {
    if (g.symbol == "m") images.push_back(x_in(basis_.m_in_x.at(g.index - 1)));
    else images.push_back(GradedPoly::generator(XB_, g.symbol, g.index));
  }
  return RingMap(MB_, XB_, images)(mb);
}

GradedPoly MUAlgebroid::eta_R(const GradedPoly& x_poly, bool linear_only) const {
  if (!same_ring(x_poly.ring(), X())) throw MismatchError("eta_R expects a polynomial in the x-basis");
  const GradedPoly in_m = basis_.x_to_m()(x_poly);
  const RingMap eta(M(), MB_, linear_only ? eta_m_linear_ : eta_m_);
  GradedPoly r(MB_);
  if (linear_only) {
    r = eta.apply_filtered(in_m, symbol_degree_at_most(MB_, "b", 1));
    std::vector<GradedPoly> images;
    const RingMap x_in = RingMap::inclusion(X(), XB_);
    for (const auto& g : MB_->generators()) {
      if (g.symbol == "m") images.push_back(x_in(basis_.m_in_x.at(g.index - 1)));
      else images.push_back(GradedPoly::generator(XB_, g.symbol, g.index));
    }
    r = RingMap(MB_, XB_, images).apply_filtered(r, symbol_degree_at_most(XB_, "b", 1));
  } else {
    r = to_x(eta(in_m));
  }
  require_integral(r, "eta_R(" + x_poly.to_text() + ")");
  return r;
}

GradedPoly MUAlgebroid::eta_R_x(int n, bool linear_only) const {
  require(n);
  return eta_R(GradedPoly::generator(X(), n - 1), linear_only);
}

const GradedPoly& MUAlgebroid::moving_coordinate_m(int n) const {
  require(n);
  std::lock_guard<std::mutex> lock(c_mutex_);
  if (static_cast<int>(c_m_.size()) < n) {
    const FGLaw& law = lazard_law_in_m(N_ + 1);
    const FGLaw F_full = law.mapped(RingMap::inclusion(law.ring(), MB_));
    const RingMap b_in = RingMap::inclusion(B_, MB_);
    for (int k = static_cast<int>(c_m_.size()) + 1; k <= n; ++k) {
      // c_k enters [x^{k+1}] of the formal sum linearly with coefficient 1
      const FGLaw F = F_full.truncated(k + 1);
      std::vector<Series> terms{Series::identity(MB_, k + 1)};
      for (int j = 1; j < k; ++j) {
        Series t(MB_, k + 1);
        t.set_coeff(j + 1, c_m_[j - 1]);
        terms.push_back(t);
      }
      const Series s = fgl_formal_sum(F, terms);
      for (int j = 2; j <= k; ++j)
        if (s.coeff(j) != b_in(bbar_[j - 2])) throw ContractError("formal sum disagrees with f^{-1} below x^" + std::to_string(k + 1));
      c_m_.push_back(b_in(bbar_[k - 1]) - s.coeff(k + 1));
    }
  }
  return c_m_[n - 1];
}

GradedPoly MUAlgebroid::moving_coordinate(int n) const {
  GradedPoly c = to_x(moving_coordinate_m(n));
  require_integral(c, "c_" + std::to_string(n));
  return c;
}

GradedPoly MUAlgebroid::moving_to_absolute(const GradedPoly& mc) const {
  if (!same_ring(mc.ring(), MC_)) throw MismatchError("expected a polynomial over L (x) C in the m-basis");
  std::int64_t top = 0;
  for (const auto& [m, c] : mc.terms()) top = std::max(top, m.weight);
  std::vector<GradedPoly> images;
  for (const auto& g : MC_->generators()) {
    if (g.symbol == "c") images.push_back(g.index <= top ? moving_coordinate_m(g.index) : GradedPoly(MB_));
    else images.push_back(GradedPoly::generator(MB_, g.symbol, g.index));
  }
  return RingMap(MC_, MB_, images)(mc);
}

GradedPoly MUAlgebroid::coproduct(int n) const {
  require(n);
  const Series fL = Series::strict(BB_, n + 1, generators_of(BB_, "bL", n));
  GradedPoly r(BB_);
  Series power = fL;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) power = power * fL;
    GradedPoly bk = k == 0 ? GradedPoly::constant(BB_, 1) : GradedPoly::generator(BB_, "bR", k);
    r += bk * power.coeff(n + 1);
  }
  return r;
}

std::vector<TensorTerm> MUAlgebroid::coproduct_tensor(int n) const {
  return split_tensor(coproduct(n), B_, "bL", B_, "bR");
}

std::vector<GradedPoly> conjugation_chi(int N) {
  RingPtr B = weight_ring("b", N);
  const Series fbar = comp_inverse(Series::strict(B, N + 1, generators_of(B, "b", N)));
  std::vector<GradedPoly> out;
  for (int n = 1; n <= N; ++n) out.push_back(fbar.coeff(n + 1));
  return out;
}

// ------------------------------------------------------- TypicalAlgebroid

TypicalAlgebroid::TypicalAlgebroid(long p, int max_n) : basis_(hazewinkel_generators(p, max_n)) {
  T_ = typical_ring("t", p, max_n);
  ET_ = Ring::join({basis_.ell_ring, T_});
  VT_ = Ring::join({basis_.v_ring, T_});
}

GradedPoly TypicalAlgebroid::eta_R_ell(int n) const {
  if (n < 0 || n > basis_.max_n) throw TruncationError("index outside the p-typical table");
  GradedPoly r(ET_);
  for (int i = 0; i <= n; ++i) {
    const int j = n - i;
    GradedPoly li = i == 0 ? GradedPoly::constant(ET_, 1) : GradedPoly::generator(ET_, "ell", i);
    GradedPoly tj = j == 0 ? GradedPoly::constant(ET_, 1) : GradedPoly::generator(ET_, "t", j);
    r += li * tj.pow(static_cast<unsigned>(ipow(basis_.p, i)));
  }
  return r;
}

GradedPoly TypicalAlgebroid::eta_R_v(int n) const {
  if (n < 1 || n > basis_.max_n) throw TruncationError("index outside the p-typical table");
  std::vector<GradedPoly> eta;
  for (int k = 1; k <= basis_.max_n; ++k) eta.push_back(eta_R_ell(k));
  const GradedPoly in_ell = RingMap(basis_.ell_ring, ET_, eta)(basis_.v_in_ell[n - 1]);
  const RingMap v_in = RingMap::inclusion(basis_.v_ring, VT_);
  std::vector<GradedPoly> images;
  for (const auto& g : ET_->generators()) {
    if (g.symbol == "ell") images.push_back(v_in(basis_.ell_in_v.at(g.index - 1)));
    else images.push_back(GradedPoly::generator(VT_, g.symbol, g.index));
  }
  GradedPoly r = RingMap(ET_, VT_, images)(in_ell);
  if (!r.is_p_integral(basis_.p)) throw IntegralityError("eta_R(v_" + std::to_string(n) + ") is not p-integral");
  return r;
}

GradedPoly typical_projection(const GradedPoly& mc, const MUAlgebroid& mu, const TypicalAlgebroid& bp) {
  if (!same_ring(mc.ring(), mu.MC())) throw MismatchError("typical projection expects a polynomial over MC");
  const long p = bp.prime();
  std::vector<GradedPoly> images;
  for (const auto& g : mu.MC()->generators()) {
    int k = 0;
    for (int j = 1; j <= bp.max_n(); ++j)
      if (ipow(p, j) == g.index + 1) k = j;
    if (k == 0) {
      images.emplace_back(bp.ET());
      continue;
    }
    images.push_back(GradedPoly::generator(bp.ET(), g.symbol == "m" ? "ell" : "t", k));
  }
  return RingMap(mu.MC(), bp.ET(), images)(mc);
}

GradedPoly augmentation(const GradedPoly& p, const RingPtr& target) {
  static const std::set<std::string> coords{"b", "c", "t", "bL", "bR"};
  return RingMap::renaming(p.ring(), target, [&](const Generator& g) -> std::optional<std::size_t> {
    if (coords.count(g.symbol)) return std::nullopt;
    auto j = target->find(g.symbol, g.index);
    if (!j) throw MismatchError("augmentation target lacks " + g.name());
    return j;
  })(p);
}

}  // namespace fglthh
