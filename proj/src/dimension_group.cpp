#include "suspk/dimension_group.hpp"

#include <algorithm>

#include "suspk/errors.hpp"

namespace suspk {

DimensionGroup dg_from_diagram(const StationaryBVDiagram& d) {
  PerronData p = perron_data(d.incidence);
  DimensionGroup g;
  g.diagram = d;
  g.field = p.field;
  g.lambda = p.lambda;
  g.lambda_inv = fe_inv(p.lambda);
  // Normalize the left eigenvector against the unit: <w, unit_vec> = 1 makes
  // the order unit have trace exactly 1.
  FieldElement s = fe_zero(p.field);
  for (int i = 0; i < d.k; ++i) s = fe_add(s, fe_scale(p.left[i], Rat(d.unit_vec[i])));
  FieldElement sinv = fe_inv(s);
  g.trace_vec.reserve(d.k);
  for (int i = 0; i < d.k; ++i) g.trace_vec.push_back(fe_mul(p.left[i], sinv));
  return g;
}

namespace {

void check_element(const DimensionGroup& g, const GroupElement& a) {
  if (a.level < 0) fail(ErrorCode::DimensionMismatch, "negative level");
  if (static_cast<int>(a.vec.size()) != g.diagram.k)
    fail(ErrorCode::DimensionMismatch, "element vector length != k");
}

}  // namespace

GroupElement ge_lift(const DimensionGroup& g, const GroupElement& a, long to_level) {
  check_element(g, a);
  if (to_level < a.level) fail(ErrorCode::DimensionMismatch, "lift below element level");
  GroupElement out{to_level, a.vec};
  for (long l = a.level; l < to_level; ++l) out.vec = mat_apply(g.diagram.incidence, out.vec);
  return out;
}

bool dg_equal(const DimensionGroup& g, const GroupElement& a, const GroupElement& b) {
  check_element(g, a);
  check_element(g, b);
  long n = std::max(a.level, b.level);
  GroupElement la = ge_lift(g, a, n), lb = ge_lift(g, b, n);
  std::vector<Int> d(g.diagram.k);
  for (int i = 0; i < g.diagram.k; ++i) d[i] = la.vec[i] - lb.vec[i];
  // Kernels of powers stabilize by exponent k.
  std::vector<Int> e = mat_apply(mat_pow(g.diagram.incidence, g.diagram.k), d);
  return std::all_of(e.begin(), e.end(), [](const Int& x) { return x == 0; });
}

FieldElement dg_trace(const DimensionGroup& g, const GroupElement& a) {
  check_element(g, a);
  FieldElement s = fe_zero(g.field);
  for (int i = 0; i < g.diagram.k; ++i) s = fe_add(s, fe_scale(g.trace_vec[i], Rat(a.vec[i])));
  return fe_mul(fe_pow(g.lambda_inv, a.level), s);
}

GroupElement ge_zero(const DimensionGroup& g) {
  return GroupElement{0, std::vector<Int>(g.diagram.k, Int(0))};
}

bool ge_is_zero(const DimensionGroup& g, const GroupElement& a) {
  return dg_equal(g, a, ge_zero(g));
}

Positivity dg_positive(const DimensionGroup& g, const GroupElement& a) {
  if (ge_is_zero(g, a)) return Positivity::Zero;
  return fe_sign(dg_trace(g, a)) > 0 ? Positivity::StrictlyPositive : Positivity::NotPositive;
}

GroupElement dg_order_unit(const DimensionGroup& g) {
  return GroupElement{0, g.diagram.unit_vec};
}

DimensionGroup telescope(const DimensionGroup& g, long p) {
  if (p < 1) fail(ErrorCode::ParseError, "telescope step must be >= 1");
  StationaryBVDiagram d{g.diagram.k, mat_pow(g.diagram.incidence, static_cast<unsigned long>(p)),
                        g.diagram.unit_vec};
  return dg_from_diagram(d);
}

long dg_rank(const DimensionGroup& g) {
  return mat_rank(mat_pow(g.diagram.incidence, g.diagram.k));
}

GroupElement ge_add(const DimensionGroup& g, const GroupElement& a, const GroupElement& b) {
  long n = std::max(a.level, b.level);
  GroupElement la = ge_lift(g, a, n), lb = ge_lift(g, b, n);
  for (int i = 0; i < g.diagram.k; ++i) la.vec[i] += lb.vec[i];
  return la;
}

GroupElement ge_neg(const GroupElement& a) {
  GroupElement out = a;
  for (auto& x : out.vec) x = -x;
  return out;
}

}  // namespace suspk
