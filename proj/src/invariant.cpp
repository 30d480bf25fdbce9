#include "suspk/invariant.hpp"

#include <cstdlib>

#include "suspk/errors.hpp"

namespace suspk {

const char* minimality_status_name(MinimalityStatus s) {
  return s == MinimalityStatus::NonMinimal ? "non_minimal" : "unknown_generic_minimal";
}

ElliottInvariant suspension_invariant(const StationaryBVDiagram& d, const FieldElement& t) {
  if (fe_is_rational(t))
    fail(ErrorCode::RationalTime, "time-t map is not minimal for rational t");
  ElliottInvariant inv;
  inv.group = dg_from_diagram(d);
  if (is_rational_field(inv.group.field)) {
    // Rational trace field embeds into any field containing t.
    inv.field = t.field;
    inv.t = t;
  } else {
    inv.field = inv.group.field;
    inv.t = fe_promote(t, inv.field);
  }
  Int det = mat_det(d.incidence);
  inv.unimodular = det == 1 || det == -1;
  return inv;
}

ElliottInvariant suspension_invariant(const BaseSystem& base, const FieldElement& t) {
  return suspension_invariant(system_to_bv(base), t);
}

FieldElement inv_trace(const ElliottInvariant& inv, const InvElement& e) {
  FieldElement tz = fe_promote(dg_trace(inv.group, e.z), inv.field);
  return fe_add(fe_rat_in(inv.field, Rat(e.n)), fe_mul(inv.t, tz));
}

bool inv_is_zero(const ElliottInvariant& inv, const InvElement& e) {
  return e.n == 0 && ge_is_zero(inv.group, e.z);
}

Positivity inv_positive(const ElliottInvariant& inv, const InvElement& e) {
  if (inv_is_zero(inv, e)) return Positivity::Zero;
  return fe_sign(inv_trace(inv, e)) > 0 ? Positivity::StrictlyPositive : Positivity::NotPositive;
}

InvElement inv_order_unit(const ElliottInvariant& inv) {
  return InvElement{Int(1), ge_zero(inv.group)};
}

InvElement inv_add(const ElliottInvariant& inv, const InvElement& a, const InvElement& b) {
  return InvElement{a.n + b.n, ge_add(inv.group, a.z, b.z)};
}

InvElement inv_neg(const InvElement& a) { return InvElement{-a.n, ge_neg(a.z)}; }

long k0_rank(const ElliottInvariant& inv) { return 1 + dg_rank(inv.group); }

const char* k1_descriptor() { return "isomorphic_to_k0"; }

TraceRangeModule trace_range(const ElliottInvariant& inv) {
  TraceRangeModule m;
  m.field = inv.field;
  m.unit = inv.unimodular ? fe_one(inv.field) : fe_promote(inv.group.lambda, inv.field);
  m.gens.reserve(inv.group.diagram.k + 1);
  m.gens.push_back(fe_one(inv.field));
  for (const FieldElement& w : inv.group.trace_vec)
    m.gens.push_back(fe_mul(inv.t, fe_promote(w, inv.field)));
  return m;
}

MinimalityStatus time_t_minimality_status(const FieldElement& t) {
  return fe_is_rational(t) ? MinimalityStatus::NonMinimal
                           : MinimalityStatus::UnknownGenericMinimal;
}

}  // namespace suspk
