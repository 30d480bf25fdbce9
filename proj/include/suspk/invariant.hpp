#pragma once

#include <vector>

#include "suspk/dimension_group.hpp"
#include "suspk/systems.hpp"

namespace suspk {

// K_0 of the crossed product splits as Z (+) K^0(X,S); `n` is the integer
// summand (generated by the class of the unit), `z` the dimension-group part.
struct InvElement {
  Int n;
  GroupElement z;
};

struct ElliottInvariant {
  DimensionGroup group;  // K^0(X,S) with its order and trace
  FieldPtr field;        // common field holding t and all trace values
  FieldElement t;        // time parameter, irrational, expressed in `field`
  bool unimodular;       // |det incidence| == 1
};

// Denotes the subgroup Z*1 + Z[1/unit]*span(gens[1:]) of the real field.
// gens[0] is always 1. `unit` is 1 when the subgroup is finitely generated.
struct TraceRangeModule {
  FieldPtr field;
  FieldElement unit;
  std::vector<FieldElement> gens;
};

enum class MinimalityStatus { NonMinimal, UnknownGenericMinimal };
const char* minimality_status_name(MinimalityStatus s);

// Rejects rational t (RationalTime). A rational trace field is promoted into
// t's field; an irrational trace field must contain t (FieldMismatch if not).
ElliottInvariant suspension_invariant(const StationaryBVDiagram& d, const FieldElement& t);
ElliottInvariant suspension_invariant(const BaseSystem& base, const FieldElement& t);

FieldElement inv_trace(const ElliottInvariant& inv, const InvElement& e);  // n + t*tau(z)
Positivity inv_positive(const ElliottInvariant& inv, const InvElement& e);
InvElement inv_order_unit(const ElliottInvariant& inv);  // (1, 0), trace 1
InvElement inv_add(const ElliottInvariant& inv, const InvElement& a, const InvElement& b);
InvElement inv_neg(const InvElement& a);
bool inv_is_zero(const ElliottInvariant& inv, const InvElement& e);
long k0_rank(const ElliottInvariant& inv);
const char* k1_descriptor();  // K_1 is abstractly isomorphic to K_0

TraceRangeModule trace_range(const ElliottInvariant& inv);

MinimalityStatus time_t_minimality_status(const FieldElement& t);

}  // namespace suspk
