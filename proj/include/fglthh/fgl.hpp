#pragma once

// Base rings: the Lazard ring in the m- and x-bases, the p-typical ring in
// the l- and v-bases (Hazewinkel generators).

#include <map>
#include <utility>
#include <vector>

#include "fglthh/poly.hpp"
#include "fglthh/series.hpp"

namespace fglthh {

/// symbol_1..symbol_n with symbol_k of weight k.
RingPtr weight_ring(const std::string& symbol, int n);
/// symbol_1..symbol_n with symbol_k of weight p^k - 1.
RingPtr typical_ring(const std::string& symbol, long p, int n);
/// p^k as a checked 64-bit integer.
std::int64_t ipow(long p, int k);

/// An integer combination of products of coefficients a_ij, e.g.
/// a_22 - a_13 = {{1, {{2, 2}}}, {-1, {{1, 3}}}}.
struct AExpr {
  std::vector<std::pair<Integer, std::vector<std::pair<int, int>>>> terms;
  std::string to_text() const;
};

enum class GeneratorSource { Classical, Standard, Auto, User };
enum class Provenance { Classical, User, Auto };
std::string to_string(Provenance p);

/// d such that the indecomposable part of a polynomial generator of weight n
/// is +-d m_n: p if n + 1 is a power of the prime p, otherwise 1.
long lazard_index(int n);

struct LazardBasis {
  int max_weight = 0;
  RingPtr m_ring;
  RingPtr x_ring;
  std::vector<GradedPoly> x_in_m;  // entry n-1 is x_n
  std::vector<GradedPoly> m_in_x;  // entry n-1 is m_n, rational coefficients
  std::vector<AExpr> x_in_a;
  std::vector<Provenance> provenance;

  RingMap x_to_m() const;
  RingMap m_to_x() const;
};

/// Polynomial generators x_1..x_N of L. Classical uses the four classical ones
/// (N <= 4), Auto picks every generator from the a_{i,n+1-i}, Standard
/// combines the two, User takes one AExpr per weight (validated).
LazardBasis lazard_generators(int N, GeneratorSource source = GeneratorSource::Standard,
                              const std::vector<AExpr>& user = {});

/// The coefficients a_ij of the universal law in the m-basis, i + j <= bound.
const FGLaw& lazard_law_in_m(int bound);

/// Evaluate an AExpr in the m-basis.
GradedPoly evaluate_aexpr(const AExpr& e, const FGLaw& F);

struct Rewrite {
  GradedPoly value;
  bool integral;
};

Rewrite rewrite_m_to_x(const GradedPoly& p, const LazardBasis& basis);

struct TypicalBasis {
  long p = 0;
  int max_n = 0;
  RingPtr ell_ring;
  RingPtr v_ring;
  std::vector<GradedPoly> ell_in_v;  // entry n-1 is l_n, denominators powers of p
  std::vector<GradedPoly> v_in_ell;  // entry n-1 is v_n

  RingMap v_to_ell() const;
  RingMap ell_to_v() const;
};

/// Hazewinkel generators from p l_n = sum_{i<n} l_i v_{n-i}^{p^i}.
TypicalBasis hazewinkel_generators(long p, int max_n);

/// Integral means integral over Z_(p) (the only denominators are powers of p).
Rewrite rewrite_ell_to_v(const GradedPoly& q, const TypicalBasis& basis);

/// p l_n - sum_{i<n} l_i v_{n-i}^{p^i}, computed in the l-basis (zero when correct).
GradedPoly hazewinkel_residual(const TypicalBasis& basis, int n);

}  // namespace fglthh
