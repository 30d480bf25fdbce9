#include "suspk/int_matrix.hpp"

#include <algorithm>

#include "suspk/errors.hpp"

namespace suspk {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> m) {
  rows = static_cast<int>(m.size());
  cols = rows == 0 ? 0 : static_cast<int>(m.begin()->size());
  a.reserve(static_cast<std::size_t>(rows) * cols);
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != cols)
      fail(ErrorCode::Internal, "ragged matrix initializer");
    for (long v : row) a.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) fail(ErrorCode::DimensionMismatch, "matrix product shape");
  IntMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Int& v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j) r.at(i, j) += v * y.at(k, j);
    }
  return r;
}

IntMatrix mat_pow(const IntMatrix& m, unsigned long e) {
  if (m.rows != m.cols) fail(ErrorCode::NotSquare, "matrix power of non-square matrix");
  IntMatrix r = IntMatrix::identity(m.rows), b = m;
  while (e > 0) {
    if (e & 1UL) r = mat_mul(r, b);
    e >>= 1UL;
    if (e > 0) b = mat_mul(b, b);
  }
  return r;
}

IntMatrix mat_transpose(const IntMatrix& m) {
  IntMatrix r(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r.at(j, i) = m.at(i, j);
  return r;
}

std::vector<Int> mat_apply(const IntMatrix& m, const std::vector<Int>& v) {
  if (m.cols != static_cast<int>(v.size()))
    fail(ErrorCode::DimensionMismatch, "matrix-vector shape");
  std::vector<Int> r(m.rows, Int(0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r[i] += m.at(i, j) * v[j];
  return r;
}

Int mat_det(const IntMatrix& m) {
  if (m.rows != m.cols) fail(ErrorCode::NotSquare, "determinant of non-square matrix");
  int n = m.rows;
  if (n == 0) return 1;
  IntMatrix w = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (w.at(k, k) == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (w.at(i, k) != 0) { swap_row = i; break; }
      if (swap_row < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(swap_row, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
        w.at(i, j) = t / prev;  // exact (Bareiss)
      }
    prev = w.at(k, k);
  }
  return sign > 0 ? w.at(n - 1, n - 1) : -w.at(n - 1, n - 1);
}

ZPoly char_poly(const IntMatrix& m) {
  if (m.rows != m.cols) fail(ErrorCode::NotSquare, "characteristic polynomial of non-square matrix");
  int n = m.rows;
  ZPoly c(n + 1, Int(0));
  c[n] = 1;
  // Faddeev-LeVerrier; every division below is exact.
  IntMatrix N = m;
  for (int k = 1; k <= n; ++k) {
    Int tr = 0;
    for (int i = 0; i < n; ++i) tr += N.at(i, i);
    c[n - k] = -tr / k;
    if (k < n) {
      for (int i = 0; i < n; ++i) N.at(i, i) += c[n - k];
      N = mat_mul(m, N);
    }
  }
  return c;
}

namespace {

void rows_swap(IntMatrix& A, int i, int j) {
  for (int c = 0; c < A.cols; ++c) std::swap(A.at(i, c), A.at(j, c));
}
void cols_swap(IntMatrix& A, int i, int j) {
  for (int r = 0; r < A.rows; ++r) std::swap(A.at(r, i), A.at(r, j));
}
// row i -= q * row j
void rows_sub(IntMatrix& A, int i, int j, const Int& q) {
  if (q == 0) return;
  for (int c = 0; c < A.cols; ++c) A.at(i, c) -= q * A.at(j, c);
}
void cols_sub(IntMatrix& A, int i, int j, const Int& q) {
  if (q == 0) return;
  for (int r = 0; r < A.rows; ++r) A.at(r, i) -= q * A.at(r, j);
}
void rows_negate(IntMatrix& A, int i) {
  for (int c = 0; c < A.cols; ++c) A.at(i, c) = -A.at(i, c);
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
  SmithResult res{IntMatrix::identity(m.rows), m, IntMatrix::identity(m.cols)};
  IntMatrix& D = res.D;
  IntMatrix& U = res.U;
  IntMatrix& V = res.V;
  int n = std::min(m.rows, m.cols);
  for (int t = 0; t < n; ++t) {
    // Pivot: smallest nonzero magnitude in the trailing block.
    int pi = -1, pj = -1;
    for (int i = t; i < m.rows; ++i)
      for (int j = t; j < m.cols; ++j) {
        if (D.at(i, j) == 0) continue;
        if (pi < 0 || abs(D.at(i, j)) < abs(D.at(pi, pj))) { pi = i; pj = j; }
      }
    if (pi < 0) break;
    if (pi != t) { rows_swap(D, t, pi); rows_swap(U, t, pi); }
    if (pj != t) { cols_swap(D, t, pj); cols_swap(V, t, pj); }
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (int i = t + 1; i < m.rows; ++i) {
        while (D.at(i, t) != 0) {
          Int q = D.at(i, t) / D.at(t, t);
          rows_sub(D, i, t, q);
          rows_sub(U, i, t, q);
          if (D.at(i, t) != 0) {  // remainder strictly smaller: swap and repeat
            rows_swap(D, t, i);
            rows_swap(U, t, i);
          }
        }
      }
      for (int j = t + 1; j < m.cols; ++j) {
        while (D.at(t, j) != 0) {
          Int q = D.at(t, j) / D.at(t, t);
          cols_sub(D, j, t, q);
          cols_sub(V, j, t, q);
          if (D.at(t, j) != 0) {
            cols_swap(D, t, j);
            cols_swap(V, t, j);
            dirty = true;  // column swap may disturb the cleared column t
          }
        }
      }
      if (!dirty) {
        // Divisibility fix-up: pivot must divide the whole trailing block.
        for (int i = t + 1; i < m.rows && !dirty; ++i)
          for (int j = t + 1; j < m.cols && !dirty; ++j)
            if (D.at(i, j) % D.at(t, t) != 0) {
              rows_sub(D, t, i, Int(-1));  // add row i to row t
              rows_sub(U, t, i, Int(-1));
              dirty = true;
            }
      }
    }
    if (D.at(t, t) < 0) { rows_negate(D, t); rows_negate(U, t); }
  }
  return res;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix A = m;
  int r = 0;
  for (int col = 0; col < A.cols && r < A.rows; ++col) {
    // Euclidean reduction of the entries below/at position r in this column.
    while (true) {
      int best = -1;
      for (int i = r; i < A.rows; ++i)
        if (A.at(i, col) != 0 && (best < 0 || abs(A.at(i, col)) < abs(A.at(best, col))))
          best = i;
      if (best < 0) break;
      if (best != r) rows_swap(A, r, best);
      bool reduced_all = true;
      for (int i = r + 1; i < A.rows; ++i) {
        if (A.at(i, col) == 0) continue;
        Int q = A.at(i, col) / A.at(r, col);
        rows_sub(A, i, r, q);
        if (A.at(i, col) != 0) reduced_all = false;
      }
      if (reduced_all) break;
    }
    if (A.at(r, col) == 0) continue;
    if (A.at(r, col) < 0) rows_negate(A, r);
    for (int i = 0; i < r; ++i) {
      Int q = floor_div(A.at(i, col), A.at(r, col));
      rows_sub(A, i, r, q);
    }
    ++r;
  }
  IntMatrix H(r, A.cols);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < A.cols; ++j) H.at(i, j) = A.at(i, j);
  return H;
}

int mat_rank(const IntMatrix& m) { return hermite_normal_form(m).rows; }

bool check_primitive(const IntMatrix& m) {
  if (m.rows != m.cols) fail(ErrorCode::NotSquare, "primitivity of non-square matrix");
  int n = m.rows;
  if (n == 0) return false;
  std::vector<char> b(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Int& v = m.at(i, j);
      if (v < 0) fail(ErrorCode::NotPrimitive, "negative entry in incidence matrix");
      b[static_cast<std::size_t>(i) * n + j] = v > 0 ? 1 : 0;
    }
  // Wielandt: primitive iff m^((n-1)^2 + 1) is strictly positive.
  long target = static_cast<long>(n - 1) * (n - 1) + 1;
  auto mul = [n](const std::vector<char>& x, const std::vector<char>& y) {
    std::vector<char> r(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (x[static_cast<std::size_t>(i) * n + k])
          for (int j = 0; j < n; ++j)
            if (y[static_cast<std::size_t>(k) * n + j]) r[static_cast<std::size_t>(i) * n + j] = 1;
    return r;
  };
  std::vector<char> acc(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) acc[static_cast<std::size_t>(i) * n + i] = 1;
  std::vector<char> base = b;
  long e = target;
  while (e > 0) {
    if (e & 1L) acc = mul(acc, base);
    e >>= 1L;
    if (e > 0) base = mul(base, base);
  }
  return std::all_of(acc.begin(), acc.end(), [](char c) { return c == 1; });
}

std::optional<IntMatrix> solve_integer(const IntMatrix& B, const IntMatrix& C) {
  if (B.rows != C.rows) fail(ErrorCode::DimensionMismatch, "solve shape");
  SmithResult s = smith_normal_form(B);
  // B X = C  <=>  D (V^-1 X) = U C with D = U B V; solve D Y = U C, X = V Y.
  IntMatrix rhs = mat_mul(s.U, C);
  IntMatrix Y(B.cols, C.cols);
  int n = std::min(B.rows, B.cols);
  for (int i = 0; i < B.rows; ++i) {
    for (int j = 0; j < C.cols; ++j) {
      if (i < n && s.D.at(i, i) != 0) {
        if (rhs.at(i, j) % s.D.at(i, i) != 0) return std::nullopt;
        Y.at(i, j) = rhs.at(i, j) / s.D.at(i, i);
      } else if (rhs.at(i, j) != 0) {
        return std::nullopt;
      }
    }
  }
  return mat_mul(s.V, Y);
}

}  // namespace suspk
