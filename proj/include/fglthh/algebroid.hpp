#pragma once

// Structure maps of the Hopf algebroids (L, LB), (L, LC) and (V, VT).

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "fglthh/fgl.hpp"
#include "fglthh/series.hpp"

namespace fglthh {

/// A polynomial over two alphabets read as a sum of tensors: for each
/// right-hand monomial, the left-hand coefficient polynomial.
struct TensorTerm {
  GradedPoly left;
  GradedPoly right;
};
std::string tensor_text(const std::vector<TensorTerm>& terms);
std::string tensor_tex(const std::vector<TensorTerm>& terms);

/// (L, LB) and (L, LC) through weight N. Rational work happens in the
/// m-basis; integral answers are rewritten to the x-basis.
class MUAlgebroid {
 public:
  explicit MUAlgebroid(int N, GeneratorSource source = GeneratorSource::Standard, const std::vector<AExpr>& user = {});

  int bound() const { return N_; }
  const LazardBasis& basis() const { return basis_; }

  RingPtr M() const { return basis_.m_ring; }
  RingPtr X() const { return basis_.x_ring; }
  RingPtr B() const { return B_; }
  RingPtr C() const { return C_; }
  RingPtr MB() const { return MB_; }
  RingPtr XB() const { return XB_; }
  RingPtr MC() const { return MC_; }
  RingPtr XC() const { return XC_; }

  /// chi(b_n) = bbar_n, the coefficient of x^{n+1} in f^{-1}.
  const GradedPoly& conjugate_b(int n) const;
  /// mbar_n, the coefficient of x^{n+1} in exp(x) = log^{-1}(x).
  const GradedPoly& exp_coefficient(int n) const;

  /// eta_R(m_n) in LB (x) Q: weight-n part of sum_i m_i (sum_j bbar_j)^{i+1}.
  const GradedPoly& eta_R_m(int n) const;
  /// eta_R(m_n) in LC (x) Q: sum_{(i+1)(j+1)=n+1} m_i c_j^{i+1}.
  GradedPoly eta_R_m_moving(int n) const;
  /// eta_R(x_n) in LB, rewritten integrally. With linear_only, only the part
  /// of b-degree <= 1 is produced (much cheaper).
  GradedPoly eta_R_x(int n, bool linear_only = false) const;
  /// eta_R applied to any polynomial in the x-basis.
  GradedPoly eta_R(const GradedPoly& x_poly, bool linear_only = false) const;

  /// c_n in LB (x) Q (m-basis) and in LB (x-basis, integral).
  const GradedPoly& moving_coordinate_m(int n) const;
  GradedPoly moving_coordinate(int n) const;

  /// psi(b_n) over the alphabets bL (left factor) and bR (right factor).
  GradedPoly coproduct(int n) const;
  std::vector<TensorTerm> coproduct_tensor(int n) const;
  RingPtr BB() const { return BB_; }

  /// Substitute c_j -> c_j(m, b) into a polynomial over MC.
  GradedPoly moving_to_absolute(const GradedPoly& mc) const;
  /// The map MB -> XB given by m_n -> m_n(x).
  GradedPoly to_x(const GradedPoly& mb) const;

 private:
  void require(int n) const;

  int N_;
  LazardBasis basis_;
  RingPtr B_, C_, MB_, XB_, MC_, XC_, BB_;
  std::vector<GradedPoly> bbar_;
  std::vector<GradedPoly> mbar_;
  std::vector<GradedPoly> eta_m_;
  std::vector<GradedPoly> eta_m_linear_;
  mutable std::mutex c_mutex_;
  mutable std::vector<GradedPoly> c_m_;
};

std::vector<TensorTerm> split_tensor(const GradedPoly& p, const RingPtr& left, const std::string& left_symbol,
                                     const RingPtr& right, const std::string& right_symbol);

/// chi(b_n) for n <= N.
std::vector<GradedPoly> conjugation_chi(int N);

/// (V, VT) at a prime p through index n.
class TypicalAlgebroid {
 public:
  TypicalAlgebroid(long p, int max_n);

  long prime() const { return basis_.p; }
  int max_n() const { return basis_.max_n; }
  const TypicalBasis& basis() const { return basis_; }
  RingPtr T() const { return T_; }
  RingPtr ET() const { return ET_; }
  RingPtr VT() const { return VT_; }

  /// eta_R(l_n) = sum_{i+j=n} l_i t_j^{p^i} over ET.
  GradedPoly eta_R_ell(int n) const;
  /// eta_R(v_n) over VT, rewritten p-integrally.
  GradedPoly eta_R_v(int n) const;

 private:
  TypicalBasis basis_;
  RingPtr T_, ET_, VT_;
};

/// The p-typical projection on MC: c_n -> t_k, m_n -> l_k when n + 1 = p^k, else 0.
GradedPoly typical_projection(const GradedPoly& mc, const MUAlgebroid& mu, const TypicalAlgebroid& bp);

/// Augmentation: every coordinate generator (symbol b, c, t, bL, bR) to zero.
GradedPoly augmentation(const GradedPoly& p, const RingPtr& target);

}  // namespace fglthh
