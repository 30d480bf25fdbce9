#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "suspk/polynomial.hpp"
#include "suspk/rational.hpp"

namespace suspk {

// Dense row-major integer matrix.
struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Int(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> m);

  Int& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  bool operator==(const IntMatrix& o) const = default;
  static IntMatrix identity(int n);
};

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y);
IntMatrix mat_pow(const IntMatrix& m, unsigned long e);  // square m, e >= 0
IntMatrix mat_transpose(const IntMatrix& m);
std::vector<Int> mat_apply(const IntMatrix& m, const std::vector<Int>& v);

Int mat_det(const IntMatrix& m);  // square; fraction-free Gaussian elimination

// Characteristic polynomial of a square matrix, lowest-degree first, monic.
ZPoly char_poly(const IntMatrix& m);

// Smith normal form: D = U * m * V with U, V unimodular and D diagonal with
// nonnegative entries d1 | d2 | ... .
struct SmithResult {
  IntMatrix U, D, V;
};
SmithResult smith_normal_form(const IntMatrix& m);

// Canonical row-style Hermite normal form of the row lattice: positive pivots,
// entries above each pivot reduced into [0, pivot), zero rows dropped. Two
// inputs with equal row lattices produce identical output.
IntMatrix hermite_normal_form(const IntMatrix& m);

int mat_rank(const IntMatrix& m);

// True iff m is nonnegative and some power is strictly positive (checked
// through exponent (n-1)^2 + 1).
bool check_primitive(const IntMatrix& m);

// Solves B * X = C exactly over the integers (B: r x k, X: k x c); nullopt if
// no integer solution exists. When B has full column rank the solution is
// unique; otherwise one solution is returned.
std::optional<IntMatrix> solve_integer(const IntMatrix& B, const IntMatrix& C);

}  // namespace suspk
