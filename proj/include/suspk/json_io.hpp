#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "suspk/comparison.hpp"
#include "suspk/entropy.hpp"
#include "suspk/invariant.hpp"
#include "suspk/systems.hpp"

namespace suspk {

using Json = nlohmann::json;  // std::map backing: object keys serialize sorted

// Conventions shared by every document:
//   * integers (matrix entries, vectors, levels, polynomial coefficients) are
//     JSON numbers when they fit in 64 bits and decimal strings otherwise;
//     both forms are accepted on input;
//   * rationals are strings, "p" or "p/q" in lowest terms;
//   * field elements are arrays of rational strings, coefficients of
//     1, theta, theta^2, ... in their number field;
//   * floating point appears only in "approx" annotations and estimator
//     reports, never in an exact field.

Json parse_json_text(const std::string& text);  // ParseError on bad syntax

Json int_to_json(const Int& v);
Int int_from_json(const Json& j);
long long_from_json(const Json& j);  // ParseError when out of range
Rat rat_from_json(const Json& j);

Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);
Json int_vec_to_json(const std::vector<Int>& v);
std::vector<Int> int_vec_from_json(const Json& j);

// {"min_poly": [c0, c1, ...], "root_interval": ["lo", "hi"]}
Json field_to_json(const FieldPtr& f);
FieldPtr field_from_json(const Json& j);

Json fe_to_json(const FieldElement& x);  // bare coefficient array
FieldElement fe_from_json(const FieldPtr& f, const Json& j);

// Self-contained value: {"field": {...}, "value": [...]}
Json fe_doc_to_json(const FieldElement& x);
FieldElement fe_doc_from_json(const Json& j);

// {"level": n, "vec": [...]}
Json group_element_to_json(const GroupElement& g);
GroupElement group_element_from_json(const Json& j);

// Systems: {"kind": "substitution", "alphabet": ["a", ...], "rules": {...}},
// {"kind": "odometer", "base": [2, 3]}, {"kind": "point"}, and — only where
// `allow_sft` — {"kind": "sft", "adjacency": [[...]]}.
struct ParsedSystem {
  std::optional<BaseSystem> base;
  std::optional<Sft> sft;
};
ParsedSystem parse_system(const Json& j, bool allow_sft);
BaseSystem parse_base_system(const Json& j);  // kind "sft" is a ParseError
Json system_to_json(const BaseSystem& sys);

// Time parameter: "p/q", "sqrtD", "sqrtD_plus_k", "sqrtD_minus_k", or an
// inline {"field": ..., "value": ...} document.
FieldElement parse_time_string(const std::string& s);

// {"field": ..., "unit": [...], "gens": [[...], ...]}; also accepts any
// document carrying such a module under a "trace_range" key.
Json trace_range_to_json(const TraceRangeModule& m);
TraceRangeModule trace_range_from_json(const Json& j);

// Full invariant report; parsing rebuilds the invariant from the diagram and
// the time parameter, so emit(parse(emit(x))) == emit(x) byte for byte.
Json invariant_to_json(const ElliottInvariant& inv);
ElliottInvariant invariant_from_json(const Json& j);

Json certificate_to_json(const IsoCertificate& c);
IsoCertificate certificate_from_json(const Json& j);

Json comparison_report_to_json(const ComparisonReport& r);

// {"exact": {"coefficient": "1/2", "log_base": "2"}, "approx": 0.34657...};
// an irrational log base (or a surviving irrational scale factor) is emitted
// as a self-contained field-element document instead of a rational string.
Json entropy_value_to_json(const ExactEntropy& e);

Json estimate_report_to_json(const EstimateReport& r);

std::string dump_json(const Json& j);  // pretty, trailing newline

}  // namespace suspk
