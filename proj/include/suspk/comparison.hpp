#pragma once

#include <optional>
#include <string>
#include <vector>

#include "suspk/invariant.hpp"

namespace suspk {

enum class Verdict { IsomorphicCertified, NotIsomorphic, Undecided };
const char* verdict_name(Verdict v);

struct Condition {
  std::string name;
  bool passed;
};

struct ComparisonReport {
  Verdict verdict = Verdict::Undecided;
  std::vector<Condition> conditions;
  std::vector<std::string> assumptions;
};

// Candidate isomorphism K_0(A_1) -> K_0(A_2):
//   (m, g) |-> (z_block * m, m * [0, mixing_column] + B(g))
// where B sends level n*p of group 1 to level n*q of group 2 and must satisfy
// B * M1^p == M2^q * B.
struct IsoCertificate {
  IntMatrix block{0, 0};  // k2 x k1
  long source_level_offset = 1;
  long target_level_offset = 1;
  std::optional<std::vector<Int>> mixing_column;  // level-0 vector in group 2
  Int z_block = Int(1);
  bool assumes_measure_equality = false;
};

// Exact equality of the denoted subgroups of R. Requires unit 1 or a positive
// integer unit on both sides (UnsupportedUnits otherwise); modules over
// incompatible fields raise FieldMismatch.
bool trace_range_equal(const TraceRangeModule& a, const TraceRangeModule& b);
bool trace_range_contains(const TraceRangeModule& m, const FieldElement& x);

// Z + t1*Z == Z + t2*Z, i.e. t1 = +-t2 mod Z. Rational inputs are rejected.
bool rotation_isomorphic(const FieldElement& t1, const FieldElement& t2);

ComparisonReport compare_invariants(const ElliottInvariant& a, const ElliottInvariant& b);
ComparisonReport verify_iso_certificate(const ElliottInvariant& a, const ElliottInvariant& b,
                                        const IsoCertificate& cert);

// Certificate for the composite map; `first` maps 1 -> 2, `second` maps 2 -> 3.
IsoCertificate compose_certificates(const IsoCertificate& first, const IsoCertificate& second);

}  // namespace suspk
