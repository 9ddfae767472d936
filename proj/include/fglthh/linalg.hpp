#pragma once

// Exact linear algebra over Q and Z: fraction-free solving, Smith normal
// form, and homology of two composable integer maps.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fglthh/poly.hpp"

namespace fglthh {

using RatMatrix = std::vector<std::vector<Rational>>;

/// Unique solution of A x = rhs. Throws NoSolutionError when inconsistent and
/// UnderdeterminedError (carrying the kernel dimension) when not unique.
std::vector<Rational> solve_rational_linear(const RatMatrix& A, const std::vector<Rational>& rhs);

std::size_t rational_rank(const RatMatrix& A);

/// Dense integer matrix with optional row/column labels.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  bool is_zero() const;
  IntMatrix transpose() const;
  std::vector<Integer> column(std::size_t j) const;
  std::vector<Integer> apply(const std::vector<Integer>& v) const;
  /// Rows i0..i1-1 and columns j0..j1-1.
  IntMatrix block(std::size_t i0, std::size_t i1, std::size_t j0, std::size_t j1) const;
  std::string to_text() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// U M V = D, with Uinv, Vinv the inverses of the unimodular U, V.
struct SmithForm {
  IntMatrix U, Uinv, D, V, Vinv;
  std::size_t rank = 0;
  /// The nonzero diagonal entries d_1 | d_2 | ..., all positive.
  std::vector<Integer> diagonal;
};

SmithForm smith_normal_form(const IntMatrix& M);
/// The positive diagonal d_1 | d_2 | ... alone, without transforms.
std::vector<Integer> smith_diagonal(const IntMatrix& M);

/// Z^free_rank + sum of Z/d_i with d_1 | d_2 | ... and every d_i >= 2.
struct FinAbGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> invariant_factors;

  bool is_zero() const { return free_rank == 0 && invariant_factors.empty(); }
  /// Order of the torsion subgroup.
  Integer torsion_order() const;
  /// Prime-power cyclic factors, sorted by prime then exponent.
  std::vector<Integer> primary() const;
  std::string to_text() const;
  friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;
};

/// Rebuild the divisor chain from arbitrary cyclic orders (1s dropped, 0 = Z).
FinAbGroup group_from_orders(const std::vector<Integer>& orders);
FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b);
/// Tensor with Z_(p): free rank kept, torsion replaced by its p-part.
FinAbGroup localize(const FinAbGroup& g, long p);
bool is_prime(long n);
std::vector<long> prime_factors(Integer n);

/// One cyclic summand of a subquotient with a cocycle representing it.
struct CyclicGenerator {
  Integer order;  // 0 for a free summand
  std::vector<Integer> lift;
};

/// ker(d_out) / im(d_in) together with the data needed to read off classes.
class Subquotient {
 public:
  /// d_in : Z^n0 -> Z^n1 and d_out : Z^n1 -> Z^n2 as n1 x n0 and n2 x n1
  /// matrices. Throws ContractError when d_out d_in != 0.
  Subquotient(const IntMatrix& d_in, const IntMatrix& d_out);

  const FinAbGroup& group() const { return group_; }
  /// Nontrivial summands: torsion first (in divisor order), then free ones.
  const std::vector<CyclicGenerator>& generators() const { return gens_; }
  std::size_t ambient_dimension() const { return n1_; }

  bool is_cocycle(const std::vector<Integer>& z) const;
  /// Coordinates of the class of a cocycle along generators(); torsion
  /// coordinates reduced into [0, order).
  std::vector<Integer> coordinates(const std::vector<Integer>& z) const;
  /// Order of the class of z (0 for infinite order).
  Integer order_of(const std::vector<Integer>& z) const;

 private:
  std::size_t n1_ = 0;
  IntMatrix d_out_;
  IntMatrix to_kernel_;  // P: ambient -> kernel coordinates
  IntMatrix U2_;         // kernel coordinates -> diagonal coordinates
  std::size_t first_nontrivial_ = 0;
  FinAbGroup group_;
  std::vector<CyclicGenerator> gens_;
  std::vector<bool> flipped_;
};

inline FinAbGroup subquotient_group(const IntMatrix& d_in, const IntMatrix& d_out) {
  return Subquotient(d_in, d_out).group();
}

}  // namespace fglthh
