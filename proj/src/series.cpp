#include "fglthh/series.hpp"

#include "fglthh/errors.hpp"

namespace fglthh {

namespace {

void require_same(const RingPtr& a, const RingPtr& b, int na, int nb) {
  if (!same_ring(a, b)) throw MismatchError("series over different generator tables");
  if (na != nb) throw TruncationError("series truncation bounds differ: " + std::to_string(na) + " vs " + std::to_string(nb));
}

}  // namespace

// ------------------------------------------------------------------ Series

Series::Series(RingPtr ring, int bound) : ring_(std::move(ring)), bound_(bound) {
  if (bound < 0) throw DomainError("negative truncation bound");
  coeffs_.assign(bound + 1, GradedPoly(ring_));
}

Series Series::identity(RingPtr ring, int bound) {
  Series s(ring, bound);
  if (bound >= 1) s.coeffs_[1] = GradedPoly::constant(ring, 1);
  return s;
}

Series Series::strict(RingPtr ring, int bound, const std::vector<GradedPoly>& c) {
  Series s = identity(ring, bound);
  for (std::size_t n = 1; n <= c.size() && static_cast<int>(n) + 1 <= bound; ++n) s.set_coeff(n + 1, c[n - 1]);
  return s;
}

void Series::set_coeff(int k, GradedPoly c) {
  if (!same_ring(c.ring(), ring_)) throw MismatchError("coefficient over the wrong generator table");
  coeffs_.at(k) = std::move(c);
}

bool Series::is_strict() const {
  return bound_ >= 1 && coeffs_[0].is_zero() && coeffs_[1] == GradedPoly::constant(ring_, 1);
}

int Series::valuation() const {
  for (int k = 0; k <= bound_; ++k)
    if (!coeffs_[k].is_zero()) return k;
  return bound_ + 1;
}

Series Series::truncated(int bound) const {
  if (bound > bound_) throw TruncationError("cannot raise a truncation bound");
  Series s(ring_, bound);
  for (int k = 0; k <= bound; ++k) s.coeffs_[k] = coeffs_[k];
  return s;
}

Series Series::mapped(const RingMap& phi) const {
  if (!same_ring(phi.source(), ring_)) throw MismatchError("ring map source does not match the series");
  Series s(phi.target(), bound_);
  for (int k = 0; k <= bound_; ++k) s.coeffs_[k] = phi(coeffs_[k]);
  return s;
}

Series& Series::operator+=(const Series& o) {
  require_same(ring_, o.ring_, bound_, o.bound_);
  for (int k = 0; k <= bound_; ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

Series& Series::operator-=(const Series& o) {
  require_same(ring_, o.ring_, bound_, o.bound_);
  for (int k = 0; k <= bound_; ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  require_same(a.ring_, b.ring_, a.bound_, b.bound_);
  Series r(a.ring_, a.bound_);
  for (int i = 0; i <= a.bound_; ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (int j = 0; i + j <= a.bound_; ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return r;
}

Series operator*(const GradedPoly& c, const Series& a) {
  Series r(a.ring_, a.bound_);
  for (int k = 0; k <= a.bound_; ++k)
    if (!a.coeffs_[k].is_zero()) r.coeffs_[k] = c * a.coeffs_[k];
  return r;
}

bool operator==(const Series& a, const Series& b) {
  return same_ring(a.ring_, b.ring_) && a.bound_ == b.bound_ && a.coeffs_ == b.coeffs_;
}

std::string Series::to_text() const {
  std::string s;
  for (int k = 0; k <= bound_; ++k) {
    if (coeffs_[k].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + coeffs_[k].to_text() + ")";
    if (k > 0) s += k == 1 ? "*x" : "*x^" + std::to_string(k);
  }
  return (s.empty() ? "0" : s) + " + O(x^" + std::to_string(bound_ + 1) + ")";
}

// ----------------------------------------------------------------- Series2

Series2::Series2(RingPtr ring, int bound) : ring_(std::move(ring)), bound_(bound) {
  if (bound < 0) throw DomainError("negative truncation bound");
  coeffs_.assign(static_cast<std::size_t>(bound + 1) * (bound + 2) / 2, GradedPoly(ring_));
}

std::size_t Series2::slot(int i, int j) const {
  if (i < 0 || j < 0 || i + j > bound_) throw TruncationError("coefficient beyond the truncation bound");
  const int t = i + j;
  return static_cast<std::size_t>(t) * (t + 1) / 2 + j;
}

Series2 Series2::x(RingPtr ring, int bound) {
  Series2 s(ring, bound);
  if (bound >= 1) s.set_coeff(1, 0, GradedPoly::constant(ring, 1));
  return s;
}

Series2 Series2::y(RingPtr ring, int bound) {
  Series2 s(ring, bound);
  if (bound >= 1) s.set_coeff(0, 1, GradedPoly::constant(ring, 1));
  return s;
}

Series2 Series2::in_x(const Series& f) {
  Series2 s(f.ring(), f.bound());
  for (int k = 0; k <= f.bound(); ++k) s.coeffs_[s.slot(k, 0)] = f.coeff(k);
  return s;
}

Series2 Series2::in_y(const Series& f) {
  Series2 s(f.ring(), f.bound());
  for (int k = 0; k <= f.bound(); ++k) s.coeffs_[s.slot(0, k)] = f.coeff(k);
  return s;
}

const GradedPoly& Series2::coeff(int i, int j) const { return coeffs_[slot(i, j)]; }

void Series2::set_coeff(int i, int j, GradedPoly c) {
  if (!same_ring(c.ring(), ring_)) throw MismatchError("coefficient over the wrong generator table");
  coeffs_[slot(i, j)] = std::move(c);
}

Series2& Series2::operator+=(const Series2& o) {
  require_same(ring_, o.ring_, bound_, o.bound_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

Series2 operator-(const Series2& a, const Series2& b) {
  require_same(a.ring_, b.ring_, a.bound_, b.bound_);
  Series2 r = a;
  for (std::size_t k = 0; k < r.coeffs_.size(); ++k) r.coeffs_[k] -= b.coeffs_[k];
  return r;
}

Series2 operator*(const Series2& a, const Series2& b) {
  require_same(a.ring_, b.ring_, a.bound_, b.bound_);
  const int N = a.bound_;
  Series2 r(a.ring_, N);
  for (int i1 = 0; i1 <= N; ++i1)
    for (int j1 = 0; i1 + j1 <= N; ++j1) {
      const GradedPoly& x = a.coeff(i1, j1);
      if (x.is_zero()) continue;
      for (int i2 = 0; i1 + j1 + i2 <= N; ++i2)
        for (int j2 = 0; i1 + j1 + i2 + j2 <= N; ++j2) {
          const GradedPoly& y = b.coeff(i2, j2);
          if (y.is_zero()) continue;
          r.coeffs_[r.slot(i1 + i2, j1 + j2)] += x * y;
        }
    }
  return r;
}

Series2 operator*(const GradedPoly& c, const Series2& a) {
  Series2 r(a.ring_, a.bound_);
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k)
    if (!a.coeffs_[k].is_zero()) r.coeffs_[k] = c * a.coeffs_[k];
  return r;
}

bool operator==(const Series2& a, const Series2& b) {
  return same_ring(a.ring_, b.ring_) && a.bound_ == b.bound_ && a.coeffs_ == b.coeffs_;
}

Series2 Series2::swapped() const {
  Series2 r(ring_, bound_);
  for (int i = 0; i <= bound_; ++i)
    for (int j = 0; i + j <= bound_; ++j) r.coeffs_[r.slot(j, i)] = coeff(i, j);
  return r;
}

Series2 Series2::truncated(int bound) const {
  if (bound > bound_) throw TruncationError("cannot raise a truncation bound");
  Series2 r(ring_, bound);
  for (int i = 0; i <= bound; ++i)
    for (int j = 0; i + j <= bound; ++j) r.coeffs_[r.slot(i, j)] = coeff(i, j);
  return r;
}

Series2 Series2::mapped(const RingMap& phi) const {
  if (!same_ring(phi.source(), ring_)) throw MismatchError("ring map source does not match the series");
  Series2 r(phi.target(), bound_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) r.coeffs_[k] = phi(coeffs_[k]);
  return r;
}

// ------------------------------------------------------------- composition

Series compose(const Series& f, const Series& g) {
  require_same(f.ring(), g.ring(), f.bound(), g.bound());
  if (!g.coeff(0).is_zero()) throw DomainError("inner series of a composition must have zero constant term");
  const int N = f.bound();
  Series r(f.ring(), N);
  r.set_coeff(0, f.coeff(0));
  const int v = g.valuation();
  Series power = g;
  for (int k = 1; k <= N && static_cast<long>(k) * v <= N; ++k) {
    if (k > 1) power = power * g;
    if (f.coeff(k).is_zero()) continue;
    r += f.coeff(k) * power;
  }
  return r;
}

Series2 compose(const Series& f, const Series2& g) {
  require_same(f.ring(), g.ring(), f.bound(), g.bound());
  if (!g.coeff(0, 0).is_zero()) throw DomainError("inner series of a composition must have zero constant term");
  const int N = f.bound();
  Series2 r(f.ring(), N);
  r.set_coeff(0, 0, f.coeff(0));
  Series2 power = g;
  for (int k = 1; k <= N; ++k) {
    if (k > 1) power = power * g;
    if (f.coeff(k).is_zero()) continue;
    r += f.coeff(k) * power;
  }
  return r;
}

Series comp_inverse(const Series& f) {
  if (!f.is_strict()) throw DomainError("compositional inverse needs a strict series x + O(x^2)");
  const int N = f.bound();
  Series g = Series::identity(f.ring(), N);
  // [x^k] f(g) = g_k + (terms in g_2..g_{k-1}), so fix one coefficient per pass
  for (int k = 2; k <= N; ++k) {
    const Series h = compose(f.truncated(k), g.truncated(k));
    g.set_coeff(k, g.coeff(k) - h.coeff(k));
  }
  return g;
}

// ------------------------------------------------------------------- laws

FGLaw fgl_from_log(const Series& log) {
  if (!log.is_strict()) throw DomainError("a logarithm must be a strict series");
  const Series exp = comp_inverse(log);
  return FGLaw(compose(exp, Series2::in_x(log) + Series2::in_y(log)));
}

FGLaw fgl_from_log(RingPtr ring, const std::string& symbol, int bound) {
  std::vector<GradedPoly> m;
  for (int n = 1; n + 1 <= bound; ++n) {
    if (!ring->find(symbol, n))
      throw TruncationError("logarithm coefficient " + symbol + "_" + std::to_string(n) + " missing for bound " +
                            std::to_string(bound));
    m.push_back(GradedPoly::generator(ring, symbol, n));
  }
  return fgl_from_log(Series::strict(ring, bound, m));
}

FGLaw additive_law(RingPtr ring, int bound) {
  return FGLaw(Series2::x(ring, bound) + Series2::y(ring, bound));
}

Series fgl_apply(const FGLaw& F, const Series& s, const Series& t) {
  require_same(F.ring(), s.ring(), F.bound(), s.bound());
  require_same(F.ring(), t.ring(), F.bound(), t.bound());
  if (!s.coeff(0).is_zero() || !t.coeff(0).is_zero())
    throw DomainError("formal sum arguments must have zero constant term");
  const int N = F.bound();
  std::vector<Series> sp{Series(s.ring(), N)}, tp{Series(t.ring(), N)};
  sp[0].set_coeff(0, GradedPoly::constant(s.ring(), 1));
  tp[0].set_coeff(0, GradedPoly::constant(t.ring(), 1));
  for (int k = 1; k <= N; ++k) {
    sp.push_back(sp.back() * s);
    tp.push_back(tp.back() * t);
  }
  const int vs = std::max(1, s.valuation());
  const int vt = std::max(1, t.valuation());
  Series r(s.ring(), N);
  for (int i = 0; i <= N; ++i)
    for (int j = 0; i + j <= N; ++j) {
      if (F.a(i, j).is_zero()) continue;
      if (static_cast<long>(i) * vs + static_cast<long>(j) * vt > N) continue;
      r += F.a(i, j) * (sp[i] * tp[j]);
    }
  return r;
}

Series fgl_formal_sum(const FGLaw& F, const std::vector<Series>& terms) {
  if (terms.empty()) return Series(F.ring(), F.bound());
  Series acc = terms.back();
  for (std::size_t i = terms.size() - 1; i-- > 0;) acc = fgl_apply(F, terms[i], acc);
  return acc;
}

}  // namespace fglthh
