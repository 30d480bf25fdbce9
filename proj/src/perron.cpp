#include "suspk/perron.hpp"

#include <algorithm>

#include "suspk/errors.hpp"

namespace suspk {

std::vector<FieldElement> field_kernel(std::vector<std::vector<FieldElement>> a,
                                       const FieldPtr& f) {
  int n = static_cast<int>(a.size());
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int sel = -1;
    for (int row = rank; row < n; ++row)
      if (!fe_is_zero(a[row][col])) { sel = row; break; }
    if (sel < 0) continue;
    std::swap(a[sel], a[rank]);
    FieldElement inv = fe_inv(a[rank][col]);
    for (int j = col; j < n; ++j) a[rank][j] = fe_mul(a[rank][j], inv);
    for (int row = 0; row < n; ++row) {
      if (row == rank || fe_is_zero(a[row][col])) continue;
      FieldElement m = a[row][col];
      for (int j = col; j < n; ++j) a[row][j] = fe_sub(a[row][j], fe_mul(m, a[rank][j]));
    }
    pivot_col.push_back(col);
    ++rank;
  }
  if (rank != n - 1) fail(ErrorCode::Internal, "kernel dimension is not 1");
  int free_col = -1;
  for (int col = 0, r = 0; col < n; ++col) {
    if (r < rank && pivot_col[r] == col) { ++r; continue; }
    free_col = col;
    break;
  }
  std::vector<FieldElement> v(n, fe_zero(f));
  v[free_col] = fe_one(f);
  for (int r = 0; r < rank; ++r) v[pivot_col[r]] = fe_neg(a[r][free_col]);
  return v;
}

namespace {

std::vector<FieldElement> positive_eigenvector(const IntMatrix& m, const FieldPtr& f,
                                               const FieldElement& lambda) {
  int n = m.rows;
  std::vector<std::vector<FieldElement>> e(n, std::vector<FieldElement>(n, fe_zero(f)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      e[i][j] = fe_rat_in(f, Rat(m.at(i, j)));
      if (i == j) e[i][j] = fe_sub(e[i][j], lambda);
    }
  std::vector<FieldElement> v = field_kernel(std::move(e), f);
  int lead = -1;
  for (int i = 0; i < n && lead < 0; ++i)
    if (!fe_is_zero(v[i])) lead = i;
  if (lead < 0) fail(ErrorCode::Internal, "zero eigenvector");
  if (fe_sign(v[lead]) < 0)
    for (auto& x : v) x = fe_neg(x);
  for (const auto& x : v)
    if (fe_sign(x) != 1) fail(ErrorCode::Internal, "Perron eigenvector not strictly positive");
  // Exact verification of the eigenvalue equation.
  for (int i = 0; i < n; ++i) {
    FieldElement s = fe_zero(f);
    for (int j = 0; j < n; ++j) s = fe_add(s, fe_scale(v[j], Rat(m.at(i, j))));
    if (!fe_equal(s, fe_mul(lambda, v[i])))
      fail(ErrorCode::Internal, "eigenvalue equation failed");
  }
  return v;
}

}  // namespace

PerronData perron_data(const IntMatrix& m) {
  if (m.rows != m.cols) fail(ErrorCode::NotSquare, "Perron data of non-square matrix");
  if (!check_primitive(m)) fail(ErrorCode::NotPrimitive, "matrix is not primitive");
  ZPoly chi = char_poly(m);
  std::vector<ZPoly> irr;
  for (const auto& [g, mult] : factor_poly(chi)) irr.push_back(g);
  // Largest real root across the irreducible factors is the spectral radius
  // (Perron-Frobenius: the spectral radius is itself a real root).
  int best = -1;
  Rat blo, bhi;
  for (std::size_t i = 0; i < irr.size(); ++i) {
    auto iv = largest_real_root_interval(irr[i]);
    if (!iv) continue;
    auto [lo, hi] = *iv;
    if (best < 0) {
      best = static_cast<int>(i);
      blo = lo;
      bhi = hi;
      continue;
    }
    // Refine both intervals until disjoint; roots of distinct irreducible
    // polynomials never coincide.
    while (!(hi < blo || bhi < lo)) {
      refine_root_interval(irr[i], lo, hi, 8);
      refine_root_interval(irr[best], blo, bhi, 8);
    }
    if (lo > bhi) {
      best = static_cast<int>(i);
      blo = lo;
      bhi = hi;
    }
  }
  if (best < 0) fail(ErrorCode::Internal, "no real eigenvalue found");
  const ZPoly& g = irr[best];
  PerronData out;
  if (zp_deg(g) == 1) {
    // Monic linear factor: rational (integer) spectral radius.
    out.field = rational_field();
    out.lambda = fe_rat(Rat(-g[0]));
  } else {
    // Canonical interval derived from g alone, so equal minimal polynomials
    // always produce structurally identical fields.
    auto iv = largest_real_root_interval(g);
    out.field = field_from_poly(g, iv->first, iv->second);
    out.lambda = fe_theta(out.field);
  }
  out.right = positive_eigenvector(m, out.field, out.lambda);
  out.left = positive_eigenvector(mat_transpose(m), out.field, out.lambda);
  return out;
}

}  // namespace suspk
