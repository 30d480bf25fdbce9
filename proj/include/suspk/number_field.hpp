#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "suspk/polynomial.hpp"
#include "suspk/rational.hpp"

namespace suspk {

// A real algebraic number field Q(theta), presented by an integer minimal
// polynomial together with an isolating interval pinning down which real root
// theta is. Degree-1 fields behave exactly like Q.
struct NumberField {
  ZPoly min_poly;  // primitive, monic, irreducible
  Rat lo, hi;      // open interval isolating exactly one real root
  int degree = 0;

  bool operator==(const NumberField& o) const {
    return min_poly == o.min_poly && lo == o.lo && hi == o.hi;
  }
};

using FieldPtr = std::shared_ptr<const NumberField>;

// The canonical rational field: min_poly x, interval (-1, 1).
FieldPtr rational_field();

// Validates irreducibility (Reducible) and the isolating interval
// (NotIsolating), then builds the field.
FieldPtr field_from_poly(const ZPoly& min_poly, const Rat& lo, const Rat& hi);

bool same_field(const FieldPtr& a, const FieldPtr& b);
bool is_rational_field(const FieldPtr& f);

// An element of a number field: coefficients of 1, theta, ..., theta^(d-1).
struct FieldElement {
  FieldPtr field;
  std::vector<Rat> c;
};

FieldElement fe_make(FieldPtr f, std::vector<Rat> coeffs);  // reduces length
FieldElement fe_rat(const Rat& r);
FieldElement fe_rat_in(const FieldPtr& f, const Rat& r);
FieldElement fe_theta(const FieldPtr& f);
FieldElement fe_zero(const FieldPtr& f);
FieldElement fe_one(const FieldPtr& f);

// Arithmetic requires operands in the same field, except that rational-valued
// elements of any field interoperate (FieldMismatch otherwise).
FieldElement fe_add(const FieldElement& x, const FieldElement& y);
FieldElement fe_sub(const FieldElement& x, const FieldElement& y);
FieldElement fe_mul(const FieldElement& x, const FieldElement& y);
FieldElement fe_div(const FieldElement& x, const FieldElement& y);
FieldElement fe_neg(const FieldElement& x);
FieldElement fe_inv(const FieldElement& x);
FieldElement fe_pow(const FieldElement& x, long e);
FieldElement fe_scale(const FieldElement& x, const Rat& r);
FieldElement fe_abs(const FieldElement& x);

bool fe_is_zero(const FieldElement& x);
bool fe_is_one(const FieldElement& x);
// Structural equality within one field (or rational values across fields).
bool fe_equal(const FieldElement& x, const FieldElement& y);

// Exact sign of the real value: -1, 0, +1. Total and exact: decides zero
// structurally, then separates from zero by interval refinement.
int fe_sign(const FieldElement& x);

bool fe_is_rational(const FieldElement& x);
Rat fe_to_rational(const FieldElement& x);  // requires fe_is_rational

// Minimal polynomial of the element over Q (primitive, positive lead).
ZPoly fe_min_poly(const FieldElement& x);

// Rational enclosure of the real value after `refine` halvings of the
// field's root interval.
std::pair<Rat, Rat> fe_enclosure(const FieldElement& x, int refine);

double fe_to_double(const FieldElement& x);

// Exact re-expression of x in `target`, when representable: rational values
// always, quadratic into quadratic when the fields coincide as subfields of R.
std::optional<FieldElement> fe_embed(const FieldElement& x, const FieldPtr& target);
// fe_embed or FieldMismatch.
FieldElement fe_promote(const FieldElement& x, const FieldPtr& target);

// Equality of real values across different field presentations.
bool fe_same_real(const FieldElement& x, const FieldElement& y);

}  // namespace suspk
