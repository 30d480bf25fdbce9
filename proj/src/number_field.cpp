#include "suspk/number_field.hpp"

#include <algorithm>

#include "suspk/errors.hpp"

namespace suspk {

namespace {

FieldPtr make_field(ZPoly mp, Rat lo, Rat hi) {
  auto f = std::make_shared<NumberField>();
  f->min_poly = std::move(mp);
  f->lo = std::move(lo);
  f->hi = std::move(hi);
  f->degree = zp_deg(f->min_poly);
  return f;
}

// Closed-interval arithmetic with rational endpoints (for sign separation).
struct Iv {
  Rat lo, hi;
};

Iv iv_add(const Iv& a, const Iv& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Iv iv_mul(const Iv& a, const Iv& b) {
  Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  Rat lo = std::min(std::min(p1, p2), std::min(p3, p4));
  Rat hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return {lo, hi};
}

Iv iv_eval(const std::vector<Rat>& coeffs, const Iv& x) {
  Iv v{Rat(0), Rat(0)};
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    v = iv_mul(v, x);
    v = iv_add(v, Iv{coeffs[i], coeffs[i]});
  }
  return v;
}

std::vector<Rat> reduce_mod_field(const FieldPtr& f, std::vector<Rat> c) {
  qp_normalize(c);
  if (qp_deg(c) >= f->degree) c = qp_divmod(c, to_qpoly(f->min_poly)).second;
  c.resize(f->degree, Rat(0));
  return c;
}

}  // namespace

FieldPtr rational_field() {
  static const FieldPtr q = make_field(ZPoly{Int(0), Int(1)}, Rat(-1), Rat(1));
  return q;
}

FieldPtr field_from_poly(const ZPoly& min_poly, const Rat& lo, const Rat& hi) {
  ZPoly mp = zp_primitive(min_poly);
  int d = zp_deg(mp);
  if (d < 1) fail(ErrorCode::Reducible, "min_poly must have degree >= 1");
  if (mp.back() != 1)
    fail(ErrorCode::ParseError, "min_poly must be monic after content normalization");
  if (!is_irreducible(mp)) fail(ErrorCode::Reducible, "min_poly factors over Q");
  if (!(lo < hi)) fail(ErrorCode::NotIsolating, "empty root interval");
  if (zp_sign_at(mp, lo) == 0 || zp_sign_at(mp, hi) == 0)
    fail(ErrorCode::NotIsolating, "root interval endpoint is a root");
  SturmChain chain(mp);
  int k = chain.count(lo, hi);
  if (k != 1)
    fail(ErrorCode::NotIsolating,
         k == 0 ? "root interval contains no root" : "root interval contains several roots");
  return make_field(std::move(mp), lo, hi);
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  return a == b || (a && b && *a == *b);
}

bool is_rational_field(const FieldPtr& f) { return f->degree == 1; }

FieldElement fe_make(FieldPtr f, std::vector<Rat> coeffs) {
  FieldElement x;
  x.c = reduce_mod_field(f, std::move(coeffs));
  x.field = std::move(f);
  return x;
}

FieldElement fe_rat(const Rat& r) { return fe_rat_in(rational_field(), r); }

FieldElement fe_rat_in(const FieldPtr& f, const Rat& r) {
  std::vector<Rat> c(f->degree, Rat(0));
  c[0] = r;
  return FieldElement{f, std::move(c)};
}

FieldElement fe_theta(const FieldPtr& f) { return fe_make(f, {Rat(0), Rat(1)}); }

FieldElement fe_zero(const FieldPtr& f) { return fe_rat_in(f, Rat(0)); }
FieldElement fe_one(const FieldPtr& f) { return fe_rat_in(f, Rat(1)); }

bool fe_is_rational(const FieldElement& x) {
  for (std::size_t i = 1; i < x.c.size(); ++i)
    if (x.c[i] != 0) return false;
  return true;
}

Rat fe_to_rational(const FieldElement& x) {
  if (!fe_is_rational(x)) fail(ErrorCode::Internal, "element is not rational");
  return x.c.empty() ? Rat(0) : x.c[0];
}

namespace {

// Aligns two operands into a common field, allowing rational values to cross
// field presentations.
std::pair<FieldElement, FieldElement> align(const FieldElement& x, const FieldElement& y) {
  if (same_field(x.field, y.field)) return {x, y};
  if (fe_is_rational(y)) return {x, fe_rat_in(x.field, fe_to_rational(y))};
  if (fe_is_rational(x)) return {fe_rat_in(y.field, fe_to_rational(x)), y};
  fail(ErrorCode::FieldMismatch, "operands live in different number fields");
}

}  // namespace

FieldElement fe_add(const FieldElement& x, const FieldElement& y) {
  auto [a, b] = align(x, y);
  std::vector<Rat> c(a.c);
  for (std::size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
  return FieldElement{a.field, std::move(c)};
}

FieldElement fe_sub(const FieldElement& x, const FieldElement& y) {
  auto [a, b] = align(x, y);
  std::vector<Rat> c(a.c);
  for (std::size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
  return FieldElement{a.field, std::move(c)};
}

FieldElement fe_mul(const FieldElement& x, const FieldElement& y) {
  auto [a, b] = align(x, y);
  QPoly p = qp_mul(a.c, b.c);
  return fe_make(a.field, std::move(p));
}

FieldElement fe_neg(const FieldElement& x) {
  FieldElement r = x;
  for (auto& v : r.c) v = -v;
  return r;
}

FieldElement fe_scale(const FieldElement& x, const Rat& r) {
  FieldElement out = x;
  for (auto& v : out.c) v *= r;
  return out;
}

bool fe_is_zero(const FieldElement& x) {
  return std::all_of(x.c.begin(), x.c.end(), [](const Rat& v) { return v == 0; });
}

bool fe_is_one(const FieldElement& x) {
  return fe_is_rational(x) && fe_to_rational(x) == 1;
}

bool fe_equal(const FieldElement& x, const FieldElement& y) {
  if (same_field(x.field, y.field)) return x.c == y.c;
  return fe_is_rational(x) && fe_is_rational(y) && fe_to_rational(x) == fe_to_rational(y);
}

FieldElement fe_inv(const FieldElement& x) {
  if (fe_is_zero(x)) fail(ErrorCode::DivisionByZero, "inverse of zero");
  if (fe_is_rational(x)) return fe_rat_in(x.field, 1 / fe_to_rational(x));
  // Extended Euclid over Q: s*c = 1 (mod min_poly); gcd is 1 by irreducibility.
  QPoly r0 = to_qpoly(x.field->min_poly), r1 = x.c;
  qp_normalize(r1);
  QPoly s0{}, s1{Rat(1)};  // Bezout coefficients w.r.t. x.c
  while (qp_deg(r1) > 0) {
    auto [q, r2] = qp_divmod(r0, r1);
    QPoly s2 = qp_sub(s0, qp_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) fail(ErrorCode::Internal, "inverse: reducible modulus");
  return fe_make(x.field, qp_scale(s1, 1 / r1[0]));
}

FieldElement fe_div(const FieldElement& x, const FieldElement& y) {
  auto [a, b] = align(x, y);
  if (fe_is_zero(b)) fail(ErrorCode::DivisionByZero, "division by zero");
  return fe_mul(a, fe_inv(b));
}

FieldElement fe_pow(const FieldElement& x, long e) {
  FieldElement base = e < 0 ? fe_inv(x) : x;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  FieldElement r = fe_one(x.field);
  while (k > 0) {
    if (k & 1UL) r = fe_mul(r, base);
    k >>= 1UL;
    if (k > 0) base = fe_mul(base, base);
  }
  return r;
}

int fe_sign(const FieldElement& x) {
  if (fe_is_rational(x)) return x.c.empty() ? 0 : sgn(x.c[0]);
  Rat tlo = x.field->lo, thi = x.field->hi;
  // Nonzero element of degree < deg(min_poly) cannot vanish at theta, so the
  // enclosure separates from zero after finitely many refinements.
  for (int iter = 0; iter < 20000; ++iter) {
    Iv v = iv_eval(x.c, Iv{tlo, thi});
    if (v.lo > 0) return 1;
    if (v.hi < 0) return -1;
    refine_root_interval(x.field->min_poly, tlo, thi, 4);
  }
  fail(ErrorCode::Internal, "sign refinement did not converge");
}

FieldElement fe_abs(const FieldElement& x) { return fe_sign(x) < 0 ? fe_neg(x) : x; }

ZPoly fe_min_poly(const FieldElement& x) {
  if (fe_is_rational(x)) {
    Rat v = fe_to_rational(x);
    return zp_primitive(ZPoly{Int(-v.get_num()), Int(v.get_den())});
  }
  int d = x.field->degree;
  // Power basis vectors of 1, x, x^2, ... ; the first linear dependency gives
  // the minimal polynomial.
  std::vector<std::vector<Rat>> powers;
  FieldElement p = fe_one(x.field);
  for (int m = 0; m <= d; ++m) {
    powers.push_back(p.c);
    p = fe_mul(p, x);
  }
  for (int m = 1; m <= d; ++m) {
    // Solve sum_j c_j x^j = x^m over the previous powers, if possible.
    std::vector<std::vector<Rat>> A(d, std::vector<Rat>(m + 1, Rat(0)));
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < d; ++i) A[i][j] = powers[j][i];
    for (int i = 0; i < d; ++i) A[i][m] = powers[m][i];
    // Gaussian elimination on the augmented system.
    int rank = 0;
    std::vector<int> pivot_of_row;
    for (int col = 0; col < m && rank < d; ++col) {
      int sel = -1;
      for (int row = rank; row < d; ++row)
        if (A[row][col] != 0) { sel = row; break; }
      if (sel < 0) continue;
      std::swap(A[sel], A[rank]);
      Rat inv = 1 / A[rank][col];
      for (int j = col; j <= m; ++j) A[rank][j] *= inv;
      for (int row = 0; row < d; ++row) {
        if (row == rank || A[row][col] == 0) continue;
        Rat f = A[row][col];
        for (int j = col; j <= m; ++j) A[row][j] -= f * A[rank][j];
      }
      pivot_of_row.push_back(col);
      ++rank;
    }
    bool consistent = true;
    for (int row = rank; row < d; ++row)
      if (A[row][m] != 0) { consistent = false; break; }
    if (!consistent) continue;
    QPoly mp(m + 1, Rat(0));
    mp[m] = 1;
    for (int r = 0; r < rank; ++r) mp[pivot_of_row[r]] = -A[r][m];
    return primitive_part(mp);
  }
  fail(ErrorCode::Internal, "minimal polynomial search failed");
}

std::pair<Rat, Rat> fe_enclosure(const FieldElement& x, int refine) {
  Rat tlo = x.field->lo, thi = x.field->hi;
  if (x.field->degree > 1 && refine > 0)
    refine_root_interval(x.field->min_poly, tlo, thi, refine);
  if (x.field->degree == 1) {
    // Degree-1 elements are constants.
    Rat v = x.c.empty() ? Rat(0) : x.c[0];
    return {v, v};
  }
  Iv v = iv_eval(x.c, Iv{tlo, thi});
  return {v.lo, v.hi};
}

double fe_to_double(const FieldElement& x) {
  auto [lo, hi] = fe_enclosure(x, 130);
  Rat mid = (lo + hi) / 2;
  return rat_to_double(mid);
}

std::optional<FieldElement> fe_embed(const FieldElement& x, const FieldPtr& target) {
  if (same_field(x.field, target)) return FieldElement{target, x.c};
  if (fe_is_rational(x)) return fe_rat_in(target, fe_to_rational(x));
  if (x.field->degree == 2 && target->degree == 2) {
    // x^2 + b x + c with real roots (-b +- sqrt(disc)) / 2.
    const ZPoly& m1 = x.field->min_poly;
    const ZPoly& m2 = target->min_poly;
    Int b1 = m1[1], c1 = m1[0], b2 = m2[1], c2 = m2[0];
    Int disc1 = b1 * b1 - 4 * c1, disc2 = b2 * b2 - 4 * c2;
    Int prod = disc1 * disc2;
    if (!is_perfect_square(prod)) return std::nullopt;
    Int w = int_sqrt(prod);
    // Which square root each theta uses: sign of 2*theta + b.
    int s1 = fe_sign(fe_make(x.field, {Rat(b1), Rat(2)}));
    int s2 = fe_sign(fe_make(target, {Rat(b2), Rat(2)}));
    // sqrt(disc1) = w / sqrt(disc2) = (w / disc2) * sqrt(disc2).
    FieldElement sqrt_disc2 =
        fe_scale(fe_make(target, {Rat(b2), Rat(2)}), Rat(s2));
    Rat ratio(w, disc2);
    ratio.canonicalize();
    FieldElement sqrt_disc1 = fe_scale(sqrt_disc2, ratio);
    FieldElement theta1 =
        fe_scale(fe_add(fe_rat_in(target, Rat(-b1)), fe_scale(sqrt_disc1, Rat(s1))), Rat(1, 2));
    // Defensive: theta1 must satisfy m1.
    FieldElement check = fe_add(fe_mul(theta1, theta1),
                                fe_add(fe_scale(theta1, Rat(b1)), fe_rat_in(target, Rat(c1))));
    if (!fe_is_zero(check)) fail(ErrorCode::Internal, "quadratic embedding check failed");
    FieldElement result = fe_rat_in(target, x.c[0]);
    result = fe_add(result, fe_scale(theta1, x.c[1]));
    return result;
  }
  return std::nullopt;
}

FieldElement fe_promote(const FieldElement& x, const FieldPtr& target) {
  auto e = fe_embed(x, target);
  if (!e) fail(ErrorCode::FieldMismatch, "value not representable in target field");
  return *e;
}

bool fe_same_real(const FieldElement& x, const FieldElement& y) {
  if (same_field(x.field, y.field)) return x.c == y.c;
  bool rx = fe_is_rational(x), ry = fe_is_rational(y);
  if (rx || ry) return rx && ry && fe_to_rational(x) == fe_to_rational(y);
  if (auto e = fe_embed(y, x.field)) return x.c == e->c;
  ZPoly mx = fe_min_poly(x), my = fe_min_poly(y);
  if (mx != my) return false;
  SturmChain chain(mx);
  for (int refine = 8; refine < 20000; refine += 8) {
    auto [xl, xh] = fe_enclosure(x, refine);
    auto [yl, yh] = fe_enclosure(y, refine);
    if (xh < yl || yh < xl) return false;
    // Both enclosures isolate one root of the shared minimal polynomial and
    // overlap => same root. Endpoints are never roots (degree >= 2).
    if (chain.count(xl, xh) == 1 && chain.count(yl, yh) == 1) {
      Rat il = std::max(xl, yl), ih = std::min(xh, yh);
      if (il <= ih && chain.count(il, ih) >= 1) return true;
    }
  }
  fail(ErrorCode::Internal, "real equality refinement did not converge");
}

}  // namespace suspk
