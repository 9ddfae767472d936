#pragma once

// Truncated power series in one or two variables with polynomial
// coefficients, and formal group laws built from logarithms.

#include <vector>

#include "fglthh/poly.hpp"

namespace fglthh {

/// sum_{k=0}^{N} a_k x^k; N is the largest exponent retained.
class Series {
 public:
  Series(RingPtr ring, int bound);
  /// The series x.
  static Series identity(RingPtr ring, int bound);
  /// x + sum_{n>=1} c[n-1] x^{n+1}, missing coefficients zero.
  static Series strict(RingPtr ring, int bound, const std::vector<GradedPoly>& c);

  const RingPtr& ring() const { return ring_; }
  int bound() const { return bound_; }
  const GradedPoly& coeff(int k) const { return coeffs_.at(k); }
  void set_coeff(int k, GradedPoly c);
  /// Zero constant term and linear coefficient 1.
  bool is_strict() const;
  /// Lowest exponent with a nonzero coefficient (bound + 1 for zero).
  int valuation() const;

  Series truncated(int bound) const;
  Series mapped(const RingMap& phi) const;

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(const GradedPoly& c, const Series& a);
  friend bool operator==(const Series& a, const Series& b);

  std::string to_text() const;

 private:
  RingPtr ring_;
  int bound_;
  std::vector<GradedPoly> coeffs_;
};

/// sum_{i+j<=N} a_ij x^i y^j.
class Series2 {
 public:
  Series2(RingPtr ring, int bound);
  static Series2 x(RingPtr ring, int bound);
  static Series2 y(RingPtr ring, int bound);
  /// g(x) + g(y) style embedding: s(x) as a series in x only.
  static Series2 in_x(const Series& s);
  static Series2 in_y(const Series& s);

  const RingPtr& ring() const { return ring_; }
  int bound() const { return bound_; }
  const GradedPoly& coeff(int i, int j) const;
  void set_coeff(int i, int j, GradedPoly c);

  Series2& operator+=(const Series2& o);
  friend Series2 operator+(Series2 a, const Series2& b) { return a += b; }
  friend Series2 operator-(const Series2& a, const Series2& b);
  friend Series2 operator*(const Series2& a, const Series2& b);
  friend Series2 operator*(const GradedPoly& c, const Series2& a);
  friend bool operator==(const Series2& a, const Series2& b);

  /// The series with x and y exchanged.
  Series2 swapped() const;
  Series2 truncated(int bound) const;
  Series2 mapped(const RingMap& phi) const;

 private:
  std::size_t slot(int i, int j) const;
  RingPtr ring_;
  int bound_;
  std::vector<GradedPoly> coeffs_;
};

/// f(g(x)); g must have zero constant term.
Series compose(const Series& f, const Series& g);
/// f(G(x, y)); G must have zero constant term.
Series2 compose(const Series& f, const Series2& g);
/// The compositional inverse of a strict series.
Series comp_inverse(const Series& f);

/// F(x, y) = x + y + sum a_ij x^i y^j, truncated at total degree N.
class FGLaw {
 public:
  explicit FGLaw(Series2 F) : F_(std::move(F)) {}
  const Series2& series() const { return F_; }
  const RingPtr& ring() const { return F_.ring(); }
  int bound() const { return F_.bound(); }
  const GradedPoly& a(int i, int j) const { return F_.coeff(i, j); }
  FGLaw truncated(int bound) const { return FGLaw(F_.truncated(bound)); }
  FGLaw mapped(const RingMap& phi) const { return FGLaw(F_.mapped(phi)); }

 private:
  Series2 F_;
};

/// F(x, y) = exp(log x + log y) with exp the compositional inverse of log.
FGLaw fgl_from_log(const Series& log);
/// log(x) = x + sum m_n x^{n+1} with m_n the generator ("m", n) of the ring.
FGLaw fgl_from_log(RingPtr ring, const std::string& symbol, int bound);
FGLaw additive_law(RingPtr ring, int bound);

/// F(s(x), t(x)); s and t must have zero constant term.
Series fgl_apply(const FGLaw& F, const Series& s, const Series& t);
/// F(t_1, F(t_2, ..., F(t_{k-1}, t_k))).
Series fgl_formal_sum(const FGLaw& F, const std::vector<Series>& terms);

}  // namespace fglthh
