#pragma once

#include "suspk/number_field.hpp"
#include "suspk/perron.hpp"
#include "suspk/systems.hpp"

namespace suspk {

// Stationary inductive limit Z^k -> Z^k -> ... along the incidence matrix,
// with the unique normalized trace induced by the left Perron eigenvector.
struct DimensionGroup {
  StationaryBVDiagram diagram;
  FieldPtr field;
  FieldElement lambda, lambda_inv;
  std::vector<FieldElement> trace_vec;  // scaled so <trace_vec, unit_vec> = 1
};

// An element presented at a finite level of the limit.
struct GroupElement {
  long level = 0;
  std::vector<Int> vec;
};

enum class Positivity { Zero, StrictlyPositive, NotPositive };

DimensionGroup dg_from_diagram(const StationaryBVDiagram& d);

bool dg_equal(const DimensionGroup& g, const GroupElement& a, const GroupElement& b);
FieldElement dg_trace(const DimensionGroup& g, const GroupElement& a);
// Positive cone of the simple limit: x >= 0 iff x = 0 or trace(x) > 0.
Positivity dg_positive(const DimensionGroup& g, const GroupElement& a);
GroupElement dg_order_unit(const DimensionGroup& g);
DimensionGroup telescope(const DimensionGroup& g, long p);  // p >= 1
long dg_rank(const DimensionGroup& g);

GroupElement ge_lift(const DimensionGroup& g, const GroupElement& a, long to_level);
GroupElement ge_add(const DimensionGroup& g, const GroupElement& a, const GroupElement& b);
GroupElement ge_neg(const GroupElement& a);
GroupElement ge_zero(const DimensionGroup& g);
bool ge_is_zero(const DimensionGroup& g, const GroupElement& a);  // zero in the limit

}  // namespace suspk
