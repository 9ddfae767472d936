#pragma once

// Cochain complexes (base (x) E, sigma) split by weight, their cohomology as
// finite abelian groups, and the bar-construction and de Rham cross-checks.

#include <functional>
#include <optional>
#include <vector>

#include "fglthh/linalg.hpp"
#include "fglthh/thh.hpp"

namespace fglthh {

/// A degree +1 differential on base (x) E.
struct Differential {
  RingPtr base;
  ExtKind kind;
  /// Largest weight whose complex is fully known.
  std::int64_t max_weight = 0;
  /// Largest exterior index available.
  int max_index = 0;
  std::function<ExtElement(const ExtElement&)> apply;
};

/// sigma from a table; max_weight is the largest weight covered by the
/// table's generators.
Differential sigma_differential(const SigmaTable& t);
/// The de Rham differential d(f dg_S) = df dg_S on a polynomial ring.
Differential de_rham_differential(const RingPtr& ring);
/// sigma over Q in the m-basis: sigma(m_n) = lambda'_n.
Differential rational_moving_differential(int N);

/// Total weight W of basis elements: base weight plus the weights of the
/// exterior generators; an element of exterior count q has degree 2W + q.
/// The complex for W runs q = 0, 1, ...
struct WeightComplex {
  std::int64_t weight = 0;
  ExtKind kind;
  RingPtr base;
  std::vector<std::vector<BasisElement>> bases;
  /// d[q] : bases[q] -> bases[q+1] as a |bases[q+1]| x |bases[q]| matrix.
  std::vector<IntMatrix> d;

  std::int64_t degree(int q) const { return 2 * weight + q; }
  /// Coordinates of a homogeneous element of this weight and count q.
  std::vector<Integer> coordinates(const ExtElement& x, int q) const;
  ExtElement element(const std::vector<Integer>& v, int q) const;
  /// d[q] with an empty matrix outside the range.
  IntMatrix d_at(int q) const;
};

WeightComplex assemble_weight_complex(const Differential& d, std::int64_t W);

/// One internal-degree slice: bases per exterior count q, the incoming and
/// outgoing differentials of each C_{d,q}.
struct DegreeComplex {
  std::int64_t degree = 0;
  ExtKind kind;
  std::vector<int> counts;  // the q present
  std::vector<std::vector<BasisElement>> bases;
  std::vector<IntMatrix> d_in;   // C_{d-1,q-1} -> C_{d,q}
  std::vector<IntMatrix> d_out;  // C_{d,q} -> C_{d+1,q+1}
};

DegreeComplex assemble_complex(const Differential& d, std::int64_t degree);

struct ClassGenerator {
  Integer order;  // 0 for a free class
  ExtElement cocycle;
};

struct CohomologyPiece {
  std::int64_t weight = 0;
  int q = 0;
  FinAbGroup group;
  std::vector<ClassGenerator> generators;
};

struct DegreeCohomology {
  std::int64_t degree = 0;
  FinAbGroup group;
  std::vector<CohomologyPiece> pieces;
};

struct CohomologyTable {
  ExtKind kind;
  long p = 0;  // nonzero: groups localized at p
  std::vector<DegreeCohomology> degrees;

  const DegreeCohomology& at(std::int64_t d) const { return degrees.at(static_cast<std::size_t>(d)); }
};

/// Cohomology in degrees 0..d_max, computed per weight in parallel (capped by
/// FGLTHH_THREADS). With p != 0 every group is localized at p and the
/// generators are scaled into the p-primary parts.
CohomologyTable cohomology_groups(const Differential& d, std::int64_t d_max, long p = 0);
CohomologyTable cohomology_groups(const SigmaTable& t, std::int64_t d_max);

/// The closed-form prediction for BP in degrees 0..2p^2+4p-6.
std::vector<FinAbGroup> bp_expected_table(long p);
/// The computed BP table over degrees 0..2p^2+4p-6. p must be 2, 3 or 5
/// unless allow_large is set.
CohomologyTable bp_cohomology_table(long p, bool allow_large = false);

/// Check that given cocycles of degree 2W + q represent classes of the stated
/// orders which together generate the (p-local) cohomology group.
struct GeneratorCheck {
  bool cocycles = false;
  bool orders_match = false;
  bool generates = false;
  std::vector<Integer> orders;
  bool ok() const { return cocycles && orders_match && generates; }
};
GeneratorCheck verify_generators(const Differential& d, std::int64_t degree, int q, const std::vector<ExtElement>& gens,
                                 const std::vector<Integer>& expected_orders, long p = 0);

struct RationalReport {
  std::vector<std::size_t> free_ranks;  // by degree
  bool collapses = false;               // ranks are 1, 0, 0, ...
  std::optional<bool> degree10_injective;
};
RationalReport rational_collapse_check(const CohomologyTable& t);
/// sigma over Q in the m-basis is injective on the q = 0 part of degree 10.
bool degree10_injectivity_check();

/// Normalized bar complex of a polynomial algebra on weighted generators.
struct BarTorEntry {
  int q = 0;
  std::int64_t weight = 0;
  std::size_t rank = 0;
  std::vector<Integer> torsion;
  std::size_t expected_rank = 0;
  bool ok() const { return torsion.empty() && rank == expected_rank; }
};
enum class Coalgebra { C, B, T };
/// Tor_q(Z, Z) of the algebra C, B (weights 1, 2, ...) or T at p, for
/// weights 0..weight_max and q = 0..q_max.
std::vector<BarTorEntry> bar_tor_check(Coalgebra which, std::int64_t weight_max, int q_max, long p = 2);
std::vector<BarTorEntry> bar_tor(const RingPtr& algebra, std::int64_t weight_max, int q_max);

/// De Rham cohomology of a polynomial ring on the given generator weights.
CohomologyTable de_rham_cohomology(const std::vector<std::int64_t>& weights, std::int64_t d_max);

/// The inclusions (Omega_L, d) -> (pi_* THH(MU), sigma') -> (Omega_C, d):
/// dx_n -> sigma'(x_n), lambda'_n -> dc_n with the base through h.
struct InclusionReport {
  std::int64_t max_degree = 0;
  std::size_t checked = 0;
  std::size_t residual_first = 0;   // basis elements with iota(dw) != sigma'(iota w)
  std::size_t residual_second = 0;  // basis elements with j(sigma' y) != d(j y)
  /// Images of cohomology generators, as coordinates in the target group.
  struct Induced {
    std::int64_t degree;
    FinAbGroup source, middle, target;
    std::vector<std::vector<Integer>> first, second;
  };
  std::vector<Induced> induced;
  bool chain_maps() const { return residual_first == 0 && residual_second == 0; }
};
InclusionReport de_rham_inclusions(const MUAlgebroid& mu, std::int64_t max_degree);

/// FGLTHH_THREADS if set to a positive integer, else the hardware count.
unsigned thread_cap();

}  // namespace fglthh
