#pragma once

// pi_* THH(MU) and pi_* THH(BP) as base (x) exterior algebra, and the
// sigma-operator as a right derivation on them.

#include <map>
#include <memory>
#include <vector>

#include "fglthh/algebroid.hpp"
#include "fglthh/fgl.hpp"

namespace fglthh {

enum class Flavor { MUMoving, MUSplit, BP, DeRham };

std::string to_string(Flavor f);
/// "mu-moving", "mu-split" or "bp"; throws DomainError otherwise.
Flavor parse_flavor(const std::string& s);

/// Which exterior algebra an element lives in: lambda'_n, e_n, lambda_n, or
/// the differentials dg_n of the generators of a polynomial ring.
struct ExtKind {
  Flavor flavor = Flavor::MUMoving;
  long p = 0;        // BP only
  RingPtr forms;     // DeRham only

  ExtKind() = default;
  ExtKind(Flavor f, long prime = 0, RingPtr forms_ring = nullptr) : flavor(f), p(prime), forms(std::move(forms_ring)) {}

  /// Internal degree of the n-th exterior generator: 2n+1, 2p^n-1 for BP,
  /// 2|g_n|+1 for dg_n.
  std::int64_t degree(int n) const;
  std::string name(int n) const;
  std::string tex(int n) const;
  friend bool operator==(const ExtKind& a, const ExtKind& b) {
    return a.flavor == b.flavor && a.p == b.p && (a.flavor != Flavor::DeRham || same_ring(a.forms, b.forms));
  }
};

/// Strictly increasing exterior indices.
using IndexSet = std::vector<int>;

/// Element of base (x) E(generators): index set -> base coefficient.
class ExtElement {
 public:
  using Terms = std::map<IndexSet, GradedPoly>;

  ExtElement(RingPtr base, ExtKind kind) : base_(std::move(base)), kind_(kind) {}
  static ExtElement from_base(const GradedPoly& p, ExtKind kind);
  static ExtElement generator(RingPtr base, ExtKind kind, int n);
  /// coeff * g_{s_1} ... g_{s_k}; unsorted indices pick up the permutation
  /// sign, repeated indices give zero.
  static ExtElement term(const GradedPoly& coeff, ExtKind kind, IndexSet indices);

  const RingPtr& base() const { return base_; }
  const ExtKind& kind() const { return kind_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of the given sorted index set (zero if absent).
  GradedPoly coefficient(const IndexSet& s) const;

  void add(const IndexSet& s, const GradedPoly& c);

  /// Internal degree of a nonzero homogeneous element; WeightError otherwise.
  std::int64_t degree() const;
  bool is_homogeneous() const;
  bool is_integral() const;

  ExtElement& operator+=(const ExtElement& o);
  ExtElement& operator-=(const ExtElement& o);
  ExtElement operator-() const;
  friend ExtElement operator+(ExtElement a, const ExtElement& b) { return a += b; }
  friend ExtElement operator-(ExtElement a, const ExtElement& b) { return a -= b; }
  friend ExtElement operator*(const ExtElement& a, const ExtElement& b);
  friend ExtElement operator*(const GradedPoly& c, const ExtElement& a);
  friend ExtElement operator*(const Rational& c, const ExtElement& a);
  friend bool operator==(const ExtElement& a, const ExtElement& b);

  /// "-(5*x_1^2 + 4*x_2)*lambda'_1 - 6*x_1*lambda'_2 - 2*lambda'_3"
  std::string to_text() const;
  std::string to_tex() const;

 private:
  void check_compatible(const ExtElement& o) const;
  RingPtr base_;
  ExtKind kind_;
  Terms terms_;
};

/// One basis element base_monomial * g_S of base (x) E.
struct BasisElement {
  Monomial base;
  IndexSet ext;
};

/// Every basis element of internal degree d with exterior indices <= max_index,
/// ordered by exterior count, then index set, then base monomial.
std::vector<BasisElement> ext_basis(const RingPtr& base, const ExtKind& kind, std::int64_t d, int max_index);
ExtElement basis_element(const RingPtr& base, const ExtKind& kind, const BasisElement& b);

/// The sigma-operator on base (x) E: images of the base generators and of
/// the exterior generators.
class SigmaTable {
 public:
  SigmaTable(Flavor flavor, long p, RingPtr base, std::vector<ExtElement> on_base, std::vector<ExtElement> on_ext);

  Flavor flavor() const { return kind_.flavor; }
  long prime() const { return kind_.p; }
  const ExtKind& kind() const { return kind_; }
  const RingPtr& base() const { return base_; }
  /// Largest exterior index with a known sigma.
  int ext_bound() const { return static_cast<int>(on_ext_.size()); }
  const ExtElement& on_base(int k) const;
  const ExtElement& on_ext(int n) const;

  /// Right derivation: sigma(xy) = x sigma(y) + (-1)^{|y|} sigma(x) y.
  ExtElement apply(const ExtElement& x) const;
  ExtElement apply(const GradedPoly& x) const;
  /// Left variant sigma'(x) = (-1)^{|x|} sigma(x), termwise.
  ExtElement apply_left(const ExtElement& x) const;

 private:
  ExtKind kind_;
  RingPtr base_;
  std::vector<ExtElement> on_base_;
  std::vector<ExtElement> on_ext_;
};

/// sigma(x_k) (MU) or sigma(v_k) (BP) for one base generator.
/// MU-moving: from sigma(m_n) = lambda'_n, rewritten integrally.
/// MU-split: the b-linear part of eta_R(x_k), b_j -> e_j.
/// BP: from sigma(l_n) = lambda_n, rewritten p-integrally.
ExtElement sigma_on_base(const MUAlgebroid& mu, Flavor flavor, int k);
ExtElement sigma_on_base(const TypicalBasis& basis, int k);

/// sigma(e_n) for n <= N solved from sigma^2(x_n) = 0.
std::vector<ExtElement> sigma_split_inductive(const MUAlgebroid& mu, const std::vector<ExtElement>& sigma_x);

/// sigma(v_n) from the recursion
/// p lambda_n = sigma(v_n) + sum_i (v_{n-i}^{p^i} lambda_i + (p^i l_i) v_{n-i}^{p^i-1} sigma(v_{n-i})).
std::vector<ExtElement> sigma_typical_recursive(const TypicalBasis& basis);

/// lambda'_n in the e-basis: the b-linear part of c_n with b_j -> e_j.
std::vector<ExtElement> lambda_in_e(const MUAlgebroid& mu);
/// Rewrite a moving-flavor element in the split flavor.
ExtElement moving_to_split(const ExtElement& x, const std::vector<ExtElement>& lambda_e);

/// Full sigma tables. The BP table is built by both routes; a disagreement
/// throws ContractError.
SigmaTable sigma_table_mu(const MUAlgebroid& mu, Flavor flavor);
SigmaTable sigma_table_bp(const TypicalBasis& basis);

/// h (x) Q: m_n -> c_n (MU, over weight_ring("c", N)) or l_n -> t_n (BP).
Rewrite hurewicz_map(const LazardBasis& basis, const GradedPoly& x);
Rewrite hurewicz_map(const TypicalBasis& basis, const GradedPoly& v);

}  // namespace fglthh
