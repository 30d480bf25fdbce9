#pragma once

#include <vector>

#include "suspk/int_matrix.hpp"
#include "suspk/number_field.hpp"

namespace suspk {

// Perron eigendata of a primitive nonnegative integer matrix: the spectral
// radius lambda as an exact element of its (minimal) field, together with
// strictly positive right and left eigenvectors. Vectors are unnormalized
// (first entry 1); callers rescale to their own conventions.
struct PerronData {
  FieldPtr field;
  FieldElement lambda;
  std::vector<FieldElement> right;
  std::vector<FieldElement> left;
};

PerronData perron_data(const IntMatrix& m);  // NotSquare, NotPrimitive

// Nullspace vector of a singular square system over a number field; requires
// nullity exactly 1.
std::vector<FieldElement> field_kernel(std::vector<std::vector<FieldElement>> a,
                                       const FieldPtr& f);

}  // namespace suspk
