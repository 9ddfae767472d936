#pragma once

// Run configuration, report assembly and JSON / TeX / plain-text emission.

#include <optional>
#include <string>

#include "fglthh/cohomology.hpp"
#include "json.hpp"

namespace fglthh {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "fgl-thh/1";

enum class Format { Json, Tex, Text };
Format parse_format(const std::string& s);

struct RunConfig {
  std::string command;
  Flavor flavor = Flavor::MUMoving;
  long prime = 2;
  int truncation = 12;
  std::optional<std::int64_t> max_degree;
  std::optional<int> max_n;
  Format format = Format::Text;
  std::string output;
  bool unsafe_large_prime = false;
  // bar-tor only
  Coalgebra coalgebra = Coalgebra::C;
  std::int64_t max_weight = 8;
  int max_q = 3;

  /// Throws DomainError when the flags are inconsistent.
  void validate() const;
  /// Effective degree bound: the flag, or 10 for MU and 2p^2+4p-6 for BP.
  std::int64_t degree_bound() const;
  Json to_json() const;
};

// Integers that do not fit in 64 bits become decimal strings.
Json integer_to_json(const Integer& n);
Integer integer_from_json(const Json& j);
/// An integer, or [num, den].
Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

/// {"terms": [{"coeff": c, "mono": {"x_1": 2, ...}}, ...]} in the ring's
/// monomial order.
Json poly_to_json(const GradedPoly& p);
GradedPoly poly_from_json(const RingPtr& ring, const Json& j);
/// As poly_to_json with an extra "ext" list of exterior generator names.
Json ext_to_json(const ExtElement& x);
ExtElement ext_from_json(const RingPtr& base, const ExtKind& kind, const Json& j);
/// {"free_rank", "invariant_factors", "primary"}.
Json group_to_json(const FinAbGroup& g);
FinAbGroup group_from_json(const Json& j);
Json matrix_to_json(const IntMatrix& m);

/// A formula line "lhs = rhs" with text, TeX and structured forms.
Json formula(const std::string& lhs, const std::string& lhs_tex, const GradedPoly& rhs);
Json formula(const std::string& lhs, const std::string& lhs_tex, const ExtElement& rhs);
/// "\sigma(x_1) = -2\lambda'_1"
std::string formula_tex(const Json& f);
std::string formula_text(const Json& f);

Json cohomology_to_json(const CohomologyTable& t);

/// Report builders; each returns a complete document with "schema",
/// "command" and "config". verify sets "ok".
Json structure_maps_report(const RunConfig& c);
Json sigma_report(const RunConfig& c);
Json cohomology_report(const RunConfig& c);
Json bar_tor_report(const RunConfig& c);
Json de_rham_report(const RunConfig& c);
Json verify_report(const RunConfig& c);
Json build_report(const RunConfig& c);

std::string render(const Json& doc, Format f);

}  // namespace fglthh
