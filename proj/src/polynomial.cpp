#include "suspk/polynomial.hpp"

#include <algorithm>
#include <cstdint>

namespace suspk {

void zp_normalize(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void qp_normalize(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int zp_deg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }
int qp_deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

QPoly to_qpoly(const ZPoly& p) {
  QPoly q;
  q.reserve(p.size());
  for (const auto& c : p) q.emplace_back(c);
  return q;
}

ZPoly primitive_part(const QPoly& p) {
  QPoly q = p;
  qp_normalize(q);
  if (q.empty()) return {};
  Int den = 1;
  for (const auto& c : q) den = int_lcm(den, c.get_den());
  ZPoly z;
  z.reserve(q.size());
  for (const auto& c : q) z.push_back(Int(c.get_num() * (den / c.get_den())));
  Int g = 0;
  for (const auto& c : z) g = int_gcd(g, c);
  if (z.back() < 0) g = -g;
  for (auto& c : z) c /= g;
  return z;
}

ZPoly zp_primitive(const ZPoly& p) {
  ZPoly z = p;
  zp_normalize(z);
  if (z.empty()) return {};
  Int g = 0;
  for (const auto& c : z) g = int_gcd(g, c);
  if (z.back() < 0) g = -g;
  for (auto& c : z) c /= g;
  return z;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  zp_normalize(r);
  return r;
}

ZPoly zp_derivative(const ZPoly& p) {
  if (p.size() <= 1) return {};
  ZPoly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
  zp_normalize(d);
  return d;
}

Rat zp_eval(const ZPoly& p, const Rat& x) {
  Rat v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + Rat(p[i]);
  return v;
}

int zp_sign_at(const ZPoly& p, const Rat& x) {
  Rat v = zp_eval(p, x);
  return sgn(v);
}

QPoly qp_add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  qp_normalize(r);
  return r;
}

QPoly qp_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  qp_normalize(r);
  return r;
}

QPoly qp_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  qp_normalize(r);
  return r;
}

QPoly qp_scale(const QPoly& a, const Rat& c) {
  if (c == 0) return {};
  QPoly r = a;
  for (auto& x : r) x *= c;
  return r;
}

std::pair<QPoly, QPoly> qp_divmod(const QPoly& a, const QPoly& b) {
  if (b.empty()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  QPoly r = a, q;
  qp_normalize(r);
  int db = qp_deg(b);
  if (qp_deg(r) >= db) q.assign(r.size() - b.size() + 1, Rat(0));
  const Rat& lead = b.back();
  while (qp_deg(r) >= db) {
    int dr = qp_deg(r);
    Rat c = r.back() / lead;
    q[dr - db] = c;
    for (int i = 0; i <= db; ++i) r[dr - db + i] -= c * b[i];
    r.pop_back();
    qp_normalize(r);
  }
  qp_normalize(q);
  return {q, r};
}

QPoly qp_monic(const QPoly& a) {
  QPoly r = a;
  qp_normalize(r);
  if (r.empty()) return r;
  Rat inv = 1 / r.back();
  for (auto& c : r) c *= inv;
  return r;
}

QPoly qp_gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  qp_normalize(x);
  qp_normalize(y);
  while (!y.empty()) {
    QPoly r = qp_divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return qp_monic(x);
}

Rat qp_eval(const QPoly& p, const Rat& x) {
  Rat v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

std::optional<ZPoly> zp_divide_exact(const ZPoly& f, const ZPoly& g) {
  if (g.empty()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  auto [q, r] = qp_divmod(to_qpoly(f), to_qpoly(g));
  if (!r.empty()) return std::nullopt;
  ZPoly z;
  z.reserve(q.size());
  for (const auto& c : q) {
    if (!is_integer(c)) return std::nullopt;
    z.push_back(c.get_num());
  }
  return z;
}

namespace {
QPoly derivative_q(const QPoly& p) {
  if (p.size() <= 1) return {};
  QPoly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * Rat(static_cast<long>(i));
  qp_normalize(d);
  return d;
}
}  // namespace

std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& f) {
  ZPoly fp = zp_primitive(f);
  std::vector<std::pair<ZPoly, int>> out;
  if (zp_deg(fp) <= 0) return out;
  QPoly a = to_qpoly(fp);
  QPoly da = to_qpoly(zp_derivative(fp));
  QPoly g = qp_gcd(a, da);
  if (qp_deg(g) == 0) {
    out.emplace_back(fp, 1);
    return out;
  }
  // Yun: peel multiplicity layers off with successive gcds.
  QPoly c = qp_divmod(a, g).first;
  QPoly d = qp_sub(qp_divmod(da, g).first, derivative_q(c));
  int i = 1;
  while (qp_deg(c) > 0) {
    QPoly ai = qp_gcd(c, d);
    if (qp_deg(ai) > 0) out.emplace_back(primitive_part(ai), i);
    c = qp_divmod(c, ai).first;
    d = qp_sub(qp_divmod(d, ai).first, derivative_q(c));
    ++i;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Factorization over the integers: Berlekamp mod p, monic Hensel lifting,
// subset recombination. Degrees here are small (<= 8 in all callers).
// ---------------------------------------------------------------------------

namespace {

using PPoly = std::vector<long>;  // coefficients in [0, p), lowest first

struct Fp {
  long p;
  long norm(long long x) const {
    long r = static_cast<long>(x % p);
    return r < 0 ? r + p : r;
  }
  long mul(long a, long b) const {
    return static_cast<long>(static_cast<__int128>(a) * b % p);
  }
  long pw(long a, long e) const {
    long r = 1, b = a % p;
    while (e > 0) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }
  long inv(long a) const { return pw(norm(a), p - 2); }
};

void pp_normalize(PPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int pp_deg(const PPoly& f) { return static_cast<int>(f.size()) - 1; }

PPoly pp_from_zp(const ZPoly& f, const Fp& K) {
  PPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    Int m = f[i] % K.p;
    r[i] = K.norm(m.get_si());
  }
  pp_normalize(r);
  return r;
}

PPoly pp_mul(const PPoly& a, const PPoly& b, const Fp& K) {
  if (a.empty() || b.empty()) return {};
  PPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = K.norm(r[i + j] + static_cast<__int128>(a[i]) * b[j] % K.p);
  pp_normalize(r);
  return r;
}

// Returns (quotient, remainder); b nonzero.
std::pair<PPoly, PPoly> pp_divmod(const PPoly& a, const PPoly& b, const Fp& K) {
  PPoly r = a, q;
  pp_normalize(r);
  int db = pp_deg(b);
  long linv = K.inv(b.back());
  if (pp_deg(r) >= db) q.assign(r.size() - b.size() + 1, 0);
  while (pp_deg(r) >= db) {
    int dr = pp_deg(r);
    long c = K.mul(r.back(), linv);
    q[dr - db] = c;
    for (int i = 0; i <= db; ++i)
      r[dr - db + i] = K.norm(r[dr - db + i] - static_cast<__int128>(c) * b[i] % K.p);
    r.pop_back();
    pp_normalize(r);
  }
  pp_normalize(q);
  return {q, r};
}

PPoly pp_monic(const PPoly& a, const Fp& K) {
  PPoly r = a;
  pp_normalize(r);
  if (r.empty()) return r;
  long inv = K.inv(r.back());
  for (auto& c : r) c = K.mul(c, inv);
  return r;
}

PPoly pp_gcd(PPoly a, PPoly b, const Fp& K) {
  pp_normalize(a);
  pp_normalize(b);
  while (!b.empty()) {
    PPoly r = pp_divmod(a, b, K).second;
    a = std::move(b);
    b = std::move(r);
  }
  return pp_monic(a, K);
}

PPoly pp_derivative(const PPoly& f, const Fp& K) {
  if (f.size() <= 1) return {};
  PPoly d(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = K.norm(static_cast<long long>(f[i]) * i);
  pp_normalize(d);
  return d;
}

PPoly pp_powmod(PPoly base, Int e, const PPoly& mod, const Fp& K) {
  PPoly r{1};
  base = pp_divmod(base, mod, K).second;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = pp_divmod(pp_mul(r, base, K), mod, K).second;
    base = pp_divmod(pp_mul(base, base, K), mod, K).second;
    e /= 2;
  }
  return r;
}

// Extended Euclid mod p: s*a + t*b = 1 for coprime monic-ish a, b.
void pp_bezout(const PPoly& a, const PPoly& b, const Fp& K, PPoly& s, PPoly& t) {
  PPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  pp_normalize(r0);
  pp_normalize(r1);
  while (!r1.empty()) {
    auto [q, r2] = pp_divmod(r0, r1, K);
    PPoly s2 = s0, t2 = t0;
    {
      PPoly qs = pp_mul(q, s1, K);
      s2.resize(std::max(s2.size(), qs.size()), 0);
      for (std::size_t i = 0; i < qs.size(); ++i) s2[i] = K.norm(s2[i] - qs[i]);
      pp_normalize(s2);
      PPoly qt = pp_mul(q, t1, K);
      t2.resize(std::max(t2.size(), qt.size()), 0);
      for (std::size_t i = 0; i < qt.size(); ++i) t2[i] = K.norm(t2[i] - qt[i]);
      pp_normalize(t2);
    }
    r0 = std::move(r1); r1 = std::move(r2);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  // r0 = gcd (a unit for coprime inputs); scale to make it exactly 1.
  if (pp_deg(r0) != 0) fail(ErrorCode::Internal, "bezout: inputs not coprime");
  long inv = K.inv(r0[0]);
  for (auto& c : s0) c = K.mul(c, inv);
  for (auto& c : t0) c = K.mul(c, inv);
  s = s0;
  t = t0;
}

bool pp_less(const PPoly& a, const PPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

// Berlekamp factorization of a monic squarefree polynomial mod p.
std::vector<PPoly> berlekamp(const PPoly& f, const Fp& K) {
  int n = pp_deg(f);
  if (n <= 1) return {f};
  // Frobenius matrix: row i = coefficients of x^{ip} mod f.
  PPoly x{0, 1};
  PPoly xp = pp_powmod(x, Int(K.p), f, K);
  std::vector<PPoly> rows(n);
  rows[0] = PPoly{1};
  for (int i = 1; i < n; ++i) rows[i] = pp_divmod(pp_mul(rows[i - 1], xp, K), f, K).second;
  // A = Q^T - I, kernel vectors v satisfy v(x)^p = v(x) mod f.
  std::vector<std::vector<long>> A(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < static_cast<int>(rows[i].size()); ++j) A[j][i] = rows[i][j];
    A[i][i] = K.norm(A[i][i] - 1);
  }
  // Gaussian elimination; record pivot columns, then read off kernel basis.
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int sel = -1;
    for (int row = rank; row < n; ++row)
      if (A[row][col] != 0) { sel = row; break; }
    if (sel < 0) continue;
    std::swap(A[sel], A[rank]);
    long inv = K.inv(A[rank][col]);
    for (int j = 0; j < n; ++j) A[rank][j] = K.mul(A[rank][j], inv);
    for (int row = 0; row < n; ++row) {
      if (row == rank || A[row][col] == 0) continue;
      long c = A[row][col];
      for (int j = 0; j < n; ++j)
        A[row][j] = K.norm(A[row][j] - static_cast<__int128>(c) * A[rank][j] % K.p);
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<PPoly> basis;
  std::vector<char> is_pivot(n, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  for (int col = 0; col < n; ++col) {
    if (is_pivot[col]) continue;
    PPoly v(n, 0);
    v[col] = 1;
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = K.norm(-A[r][col]);
    pp_normalize(v);
    basis.push_back(v);
  }
  std::size_t nfactors = basis.size() + 1;  // constants always in the kernel
  std::vector<PPoly> factors{f};
  for (const auto& v : basis) {
    if (factors.size() == nfactors) break;
    for (long c = 0; c < K.p && factors.size() < nfactors; ++c) {
      for (std::size_t fi = 0; fi < factors.size() && factors.size() < nfactors; ++fi) {
        if (pp_deg(factors[fi]) <= 1) continue;
        PPoly vc = pp_divmod(v, factors[fi], K).second;
        if (vc.empty()) vc = PPoly{0};
        vc.resize(std::max<std::size_t>(vc.size(), 1));
        vc[0] = K.norm(vc[0] - c);
        pp_normalize(vc);
        PPoly h = pp_gcd(factors[fi], vc, K);
        if (pp_deg(h) > 0 && pp_deg(h) < pp_deg(factors[fi])) {
          PPoly q = pp_divmod(factors[fi], h, K).first;
          factors[fi] = h;
          factors.push_back(pp_monic(q, K));
        }
      }
    }
  }
  std::sort(factors.begin(), factors.end(), pp_less);
  return factors;
}

Int zp_symmetric(const Int& x, const Int& m) {
  Int r = x % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

ZPoly zp_symmetric_mod(const ZPoly& f, const Int& m) {
  ZPoly r = f;
  for (auto& c : r) c = zp_symmetric(c, m);
  zp_normalize(r);
  return r;
}

ZPoly zp_sub_local(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  zp_normalize(r);
  return r;
}

ZPoly zp_from_pp(const PPoly& f) {
  ZPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  zp_normalize(r);
  return r;
}

// Linear Hensel lift of a monic coprime pair: F = G*H (mod p) -> (mod target).
void hensel_pair(const ZPoly& F, const PPoly& Gp, const PPoly& Hp, const Fp& K,
                 const Int& target, ZPoly& G, ZPoly& H) {
  PPoly S, T;
  pp_bezout(Gp, Hp, K, S, T);
  G = zp_from_pp(Gp);
  H = zp_from_pp(Hp);
  Int q(K.p);
  while (q < target) {
    ZPoly E = zp_sub_local(F, zp_mul(G, H));
    PPoly e(E.size(), 0);
    for (std::size_t i = 0; i < E.size(); ++i) {
      Int d = E[i] / q;  // exact: F = G*H (mod q) by induction
      Int md = d % K.p;
      e[i] = K.norm(md.get_si());
    }
    pp_normalize(e);
    PPoly Gm = pp_from_zp(G, K), Hm = pp_from_zp(H, K);
    auto [w, g] = pp_divmod(pp_mul(T, e, K), Gm, K);
    PPoly h = pp_mul(S, e, K);
    {
      PPoly wh = pp_mul(w, Hm, K);
      h.resize(std::max(h.size(), wh.size()), 0);
      for (std::size_t i = 0; i < wh.size(); ++i) h[i] = K.norm(h[i] + wh[i]);
      pp_normalize(h);
    }
    if (pp_deg(g) >= pp_deg(Gm) || pp_deg(h) >= pp_deg(Hm))
      fail(ErrorCode::Internal, "hensel step degree bound violated");
    G.resize(std::max(G.size(), g.size()), Int(0));
    for (std::size_t i = 0; i < g.size(); ++i) G[i] += q * g[i];
    H.resize(std::max(H.size(), h.size()), Int(0));
    for (std::size_t i = 0; i < h.size(); ++i) H[i] += q * h[i];
    zp_normalize(G);
    zp_normalize(H);
    q *= K.p;
  }
  G = zp_symmetric_mod(G, q);
  H = zp_symmetric_mod(H, q);
  // Symmetric reduction can only have dropped the monic lead if something is wrong.
  if (G.empty() || G.back() != 1 || H.empty() || H.back() != 1)
    fail(ErrorCode::Internal, "hensel lift lost monicity");
}

void hensel_tree(const ZPoly& F, const std::vector<PPoly>& parts, const Fp& K,
                 const Int& target, std::vector<ZPoly>& out) {
  if (parts.size() == 1) {
    out.push_back(zp_symmetric_mod(F, target));
    return;
  }
  std::size_t half = parts.size() / 2;
  PPoly Gp{1}, Hp{1};
  for (std::size_t i = 0; i < half; ++i) Gp = pp_mul(Gp, parts[i], K);
  for (std::size_t i = half; i < parts.size(); ++i) Hp = pp_mul(Hp, parts[i], K);
  ZPoly G, H;
  hensel_pair(F, Gp, Hp, K, target, G, H);
  std::vector<PPoly> left(parts.begin(), parts.begin() + half);
  std::vector<PPoly> right(parts.begin() + half, parts.end());
  hensel_tree(G, left, K, target, out);
  hensel_tree(H, right, K, target, out);
}

ZPoly zp_mulmod_sym(const ZPoly& a, const ZPoly& b, const Int& m) {
  return zp_symmetric_mod(zp_mul(a, b), m);
}

bool zp_less(const ZPoly& a, const ZPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

// f primitive, squarefree, positive lead, degree >= 1.
std::vector<ZPoly> factor_squarefree(const ZPoly& f) {
  int n = zp_deg(f);
  if (n == 1) return {f};
  const Int c = f.back();
  // Monicize: F(y) = c^{n-1} f(y/c) is monic with integer coefficients; its
  // monic factors pull back to the primitive factors of f via y = c*x.
  ZPoly F(n + 1);
  F[n] = 1;
  for (int i = 0; i < n; ++i) F[i] = f[i] * int_pow(c, n - 1 - i);
  static const long primes[] = {2,   3,   5,   7,   11,  13,  17,  19,  23,  29,
                                31,  37,  41,  43,  47,  53,  59,  61,  67,  71,
                                73,  79,  83,  89,  97,  101, 103, 107, 109, 113,
                                127, 131, 137, 139, 149, 151, 157, 163, 167, 173};
  Fp K{0};
  PPoly fbar;
  for (long p : primes) {
    K.p = p;
    fbar = pp_from_zp(F, K);
    if (pp_deg(fbar) != n) continue;  // cannot happen for monic F; keep the guard
    PPoly g = pp_gcd(fbar, pp_derivative(fbar, K), K);
    if (pp_deg(g) == 0) break;
    K.p = 0;
  }
  if (K.p == 0) fail(ErrorCode::Internal, "no squarefree prime found");
  std::vector<PPoly> modular = berlekamp(pp_monic(fbar, K), K);
  if (modular.size() == 1) return {f};
  // Landau-Mignotte: coefficients of any monic factor are bounded by 2^n * |F|_2.
  Int norm2 = 0;
  for (const auto& a : F) norm2 += a * a;
  Int bound = (int_sqrt(norm2) + 1) * int_pow(Int(2), n);
  Int target(K.p);
  while (target <= 2 * bound) target *= K.p;
  std::vector<ZPoly> lifted;
  hensel_tree(zp_symmetric_mod(F, target), modular, K, target, lifted);
  // Subset recombination against the monic F.
  std::vector<ZPoly> monic_factors;
  std::vector<int> remaining(lifted.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = static_cast<int>(i);
  ZPoly current = F;
  std::size_t s = 1;
  while (2 * s <= remaining.size()) {
    std::vector<int> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = static_cast<int>(i);
    bool found = false;
    while (true) {
      ZPoly cand{1};
      for (std::size_t i = 0; i < s; ++i)
        cand = zp_mulmod_sym(cand, lifted[remaining[idx[i]]], target);
      if (auto quot = zp_divide_exact(current, cand)) {
        monic_factors.push_back(cand);
        current = *quot;
        std::vector<int> next;
        std::size_t k = 0;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
          if (k < s && static_cast<int>(i) == idx[k]) {
            ++k;
            continue;
          }
          next.push_back(remaining[i]);
        }
        remaining = std::move(next);
        found = true;
        break;
      }
      // next subset (lexicographic)
      int i = static_cast<int>(s) - 1;
      while (i >= 0 && idx[i] == static_cast<int>(remaining.size() - s + i)) --i;
      if (i < 0) break;
      ++idx[i];
      for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (zp_deg(current) >= 1) monic_factors.push_back(current);
  // Pull factors of F back to primitive factors of f: g(x) = pp(G(c*x)).
  std::vector<ZPoly> out;
  for (const auto& G : monic_factors) {
    ZPoly g(G.size());
    for (std::size_t i = 0; i < G.size(); ++i) g[i] = G[i] * int_pow(c, i);
    out.push_back(zp_primitive(g));
  }
  std::sort(out.begin(), out.end(), zp_less);
  return out;
}

}  // namespace

std::vector<std::pair<ZPoly, int>> factor_poly(const ZPoly& f) {
  ZPoly fp = zp_primitive(f);
  if (fp.empty()) fail(ErrorCode::Internal, "factor_poly of zero polynomial");
  std::vector<std::pair<ZPoly, int>> out;
  for (const auto& [part, mult] : squarefree_decomposition(fp))
    for (const auto& irr : factor_squarefree(part)) out.emplace_back(irr, mult);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return zp_less(a.first, b.first) || (!zp_less(b.first, a.first) && a.second < b.second);
  });
  return out;
}

bool is_irreducible(const ZPoly& f) {
  ZPoly fp = zp_primitive(f);
  if (zp_deg(fp) < 1) return false;
  auto fs = factor_poly(fp);
  return fs.size() == 1 && fs[0].second == 1;
}

// ---------------------------------------------------------------------------
// Sturm sequences
// ---------------------------------------------------------------------------

namespace {

int sign_variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

SturmChain::SturmChain(const ZPoly& f) {
  ZPoly fp = zp_primitive(f);
  if (fp.empty()) fail(ErrorCode::Internal, "Sturm chain of zero polynomial");
  // Work with the squarefree part so the chain counts distinct roots.
  QPoly a = to_qpoly(fp);
  QPoly g = qp_gcd(a, to_qpoly(zp_derivative(fp)));
  ZPoly p0 = primitive_part(qp_divmod(a, g).first);
  chain_.push_back(p0);
  if (zp_deg(p0) >= 1) {
    chain_.push_back(zp_primitive(zp_derivative(p0)));
    while (zp_deg(chain_.back()) >= 1) {
      QPoly r = qp_divmod(to_qpoly(chain_[chain_.size() - 2]), to_qpoly(chain_.back())).second;
      if (r.empty()) break;
      // Negate, then rescale by a positive constant; sign data is preserved.
      ZPoly nr = primitive_part(r);  // positive lead by construction
      if (r.back() > 0)
        for (auto& c : nr) c = -c;
      chain_.push_back(nr);
    }
  }
  Rat maxr(0);
  const Int& lead = p0.back();
  for (int i = 0; i < zp_deg(p0); ++i) {
    Rat c(abs(p0[i]), abs(lead));
    c.canonicalize();
    if (c > maxr) maxr = c;
  }
  bound_ = maxr + 1;
  std::vector<int> sn, sp;
  for (const auto& q : chain_) {
    int ls = sgn(q.back());
    sp.push_back(ls);
    sn.push_back(zp_deg(q) % 2 == 0 ? ls : -ls);
  }
  var_neg_inf_ = sign_variations(sn);
  var_pos_inf_ = sign_variations(sp);
}

int SturmChain::variations_at(const Rat& x) const {
  std::vector<int> signs;
  signs.reserve(chain_.size());
  for (const auto& q : chain_) signs.push_back(zp_sign_at(q, x));
  return sign_variations(signs);
}

int SturmChain::count(const Rat& lo, const Rat& hi) const {
  if (lo > hi) fail(ErrorCode::Internal, "Sturm count on reversed interval");
  return variations_at(lo) - variations_at(hi);
}

int SturmChain::count_all() const { return var_neg_inf_ - var_pos_inf_; }

std::optional<std::pair<Rat, Rat>> largest_real_root_interval(const ZPoly& f) {
  SturmChain chain(f);
  if (chain.count_all() == 0) return std::nullopt;
  Rat lo = -chain.cauchy_bound(), hi = chain.cauchy_bound();
  // Invariant: (lo, hi] holds >= 1 root and nothing above hi is a root.
  while (chain.count(lo, hi) > 1 || zp_sign_at(f, lo) == 0 || zp_sign_at(f, hi) == 0) {
    Rat mid = (lo + hi) / 2;
    if (zp_sign_at(f, mid) == 0) {
      if (chain.count(mid, hi) >= 1) {
        lo = mid;
      } else {
        // mid is the largest root (a rational root); shrink a window around it.
        Rat delta = (hi - lo) / 4;
        while (chain.count(mid - delta, mid + delta) != 1 ||
               zp_sign_at(f, mid - delta) == 0 || zp_sign_at(f, mid + delta) == 0)
          delta /= 2;
        return std::make_pair(mid - delta, mid + delta);
      }
    } else if (chain.count(mid, hi) >= 1) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::make_pair(lo, hi);
}

void refine_root_interval(const ZPoly& f, Rat& lo, Rat& hi, int steps) {
  QPoly a = to_qpoly(f);
  QPoly g = qp_gcd(a, to_qpoly(zp_derivative(f)));
  ZPoly sq = qp_deg(g) == 0 ? zp_primitive(f) : primitive_part(qp_divmod(a, g).first);
  int slo = zp_sign_at(sq, lo), shi = zp_sign_at(sq, hi);
  if (slo == 0 || shi == 0 || slo == shi)
    fail(ErrorCode::Internal, "refine: interval does not isolate a sign change");
  for (int i = 0; i < steps; ++i) {
    Rat mid = (lo + hi) / 2;
    int sm = zp_sign_at(sq, mid);
    if (sm == 0) {
      // Rational root dead-center: tighten symmetrically, keeping it inside.
      lo = (lo + mid) / 2;
      hi = (mid + hi) / 2;
    } else if (sm == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
}

}  // namespace suspk
