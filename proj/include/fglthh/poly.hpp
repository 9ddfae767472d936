#pragma once

// Sparse exact-rational polynomials in weighted generators.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fglthh {

using Integer = mpz_class;
using Rational = mpq_class;

/// One polynomial generator, e.g. x_3 of weight 3 (topological degree 6).
struct Generator {
  std::string symbol;
  int index = 0;
  std::int64_t weight = 1;

  std::string name() const;
  std::string tex() const;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Generator table of a polynomial ring. Generators are kept ordered by
/// (weight, symbol, index); that order fixes the canonical monomial order.
class Ring {
 public:
  static RingPtr make(std::vector<Generator> gens);
  /// symbol_1, ..., symbol_k with the given weights.
  static RingPtr indexed(const std::string& symbol, const std::vector<std::int64_t>& weights);
  /// Disjoint union of generator tables.
  static RingPtr join(std::initializer_list<RingPtr> parts);

  std::size_t size() const { return gens_.size(); }
  const Generator& gen(std::size_t i) const { return gens_.at(i); }
  const std::vector<Generator>& generators() const { return gens_; }
  std::optional<std::size_t> find(const std::string& symbol, int index) const;
  std::size_t index_of(const std::string& symbol, int index) const;

  bool operator==(const Ring& other) const;

 private:
  explicit Ring(std::vector<Generator> gens) : gens_(std::move(gens)) {}
  std::vector<Generator> gens_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);

/// Exponent vector over a ring's generator table, with cached total weight.
struct Monomial {
  std::int64_t weight = 0;
  std::vector<std::uint32_t> exps;

  static Monomial one(const Ring& ring);
  static Monomial of_generator(const Ring& ring, std::size_t i, std::uint32_t e = 1);
  bool is_one() const { return weight == 0; }
  std::uint32_t total_degree() const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }
};

/// Canonical order: lower weight first; within a weight, lexicographic on
/// generator indices with larger exponents first (x_1^3 < x_1 x_2 < x_3).
bool operator<(const Monomial& a, const Monomial& b);

Monomial operator*(const Monomial& a, const Monomial& b);

class GradedPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  explicit GradedPoly(RingPtr ring) : ring_(std::move(ring)) {}
  static GradedPoly constant(RingPtr ring, const Rational& c);
  static GradedPoly generator(RingPtr ring, std::size_t i);
  static GradedPoly generator(RingPtr ring, const std::string& symbol, int index);
  static GradedPoly term(RingPtr ring, Monomial m, const Rational& c);

  const RingPtr& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& m, const Rational& c);
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const;

  bool is_homogeneous() const;
  /// Weight of a nonzero homogeneous polynomial; throws WeightError otherwise.
  std::int64_t weight() const;
  GradedPoly homogeneous_part(std::int64_t w) const;

  bool is_integral() const;
  /// Every denominator is prime to p.
  bool is_p_integral(long p) const;
  Integer denominator_lcm() const;

  GradedPoly derivative(std::size_t i) const;
  /// Keep only terms satisfying the predicate.
  GradedPoly filtered(const std::function<bool(const Monomial&)>& keep) const;
  GradedPoly pow(unsigned k) const;

  GradedPoly& operator+=(const GradedPoly& o);
  GradedPoly& operator-=(const GradedPoly& o);
  GradedPoly& operator*=(const Rational& c);
  GradedPoly operator-() const;

  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);
  friend GradedPoly operator*(GradedPoly a, const Rational& c) { return a *= c; }
  friend GradedPoly operator*(const Rational& c, GradedPoly a) { return a *= c; }
  friend bool operator==(const GradedPoly& a, const GradedPoly& b);

  std::string to_text() const;
  std::string to_tex() const;

 private:
  RingPtr ring_;
  Terms terms_;
};

/// Product with terms failing `keep` dropped as they are produced.
GradedPoly multiply_filtered(const GradedPoly& a, const GradedPoly& b,
                             const std::function<bool(const Monomial&)>& keep);

enum class PolyOp { Add, Mul };

/// Checked arithmetic: tables must agree, homogeneous summands must share a weight.
GradedPoly poly_arith(const GradedPoly& a, const GradedPoly& b, PolyOp op);

/// Ring homomorphism given by images of the source generators.
class RingMap {
 public:
  RingMap(RingPtr source, RingPtr target, std::vector<GradedPoly> images);
  /// Map sending generator i to a generator (or zero) of the target.
  static RingMap renaming(RingPtr source, RingPtr target,
                          const std::function<std::optional<std::size_t>(const Generator&)>& rule);

  /// Send each generator to the target generator of the same name; throws
  /// MismatchError if one is missing.
  static RingMap inclusion(RingPtr source, RingPtr target);

  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }
  const GradedPoly& image(std::size_t i) const { return images_.at(i); }

  GradedPoly operator()(const GradedPoly& p) const;
  /// Apply, discarding intermediate terms that fail `keep`; `keep` must be
  /// closed under division for the result to be the filtered image.
  GradedPoly apply_filtered(const GradedPoly& p,
                            const std::function<bool(const Monomial&)>& keep) const;

 private:
  RingPtr source_;
  RingPtr target_;
  std::vector<GradedPoly> images_;
};

/// Every monomial of the given weight, in canonical order.
std::vector<Monomial> monomials_of_weight(const Ring& ring, std::int64_t weight);

/// Text form of a single monomial, e.g. "x_1^2*x_3" ("1" for the unit).
std::string monomial_text(const Ring& ring, const Monomial& m);
std::string monomial_tex(const Ring& ring, const Monomial& m);

/// Format a signed sum of (coefficient, factor string) pairs.
std::string format_sum_text(const std::vector<std::pair<Rational, std::string>>& terms);
std::string format_sum_tex(const std::vector<std::pair<Rational, std::string>>& terms);

std::string rational_text(const Rational& q);

/// Parse the text form produced by to_text(), e.g. "x_1^2*x_3 - 1/2*b_1 + 3".
/// Juxtaposition with whitespace also multiplies.
GradedPoly parse_poly(RingPtr ring, std::string_view text);

}  // namespace fglthh
