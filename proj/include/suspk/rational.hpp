#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "suspk/errors.hpp"

namespace suspk {

// mpq_class keeps values canonical (reduced, positive denominator), which is
// exactly the Rational contract; Int/Rat are used pervasively below.
using Int = mpz_class;
using Rat = mpq_class;

inline Int int_from_string(const std::string& s) {
  if (s.empty()) fail(ErrorCode::ParseError, "empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) fail(ErrorCode::ParseError, "bad integer literal '" + s + "'");
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9')
      fail(ErrorCode::ParseError, "bad integer literal '" + s + "'");
  return Int(s);
}

// Accepts "p" or "p/q" with optional sign; q must be nonzero.
inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(int_from_string(s));
  Int num = int_from_string(s.substr(0, slash));
  Int den = int_from_string(s.substr(slash + 1));
  if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + s + "'");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Int& z) { return z.get_str(); }

inline std::string to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int rat_floor(const Rat& q) { return floor_div(q.get_num(), q.get_den()); }

inline Int rat_ceil(const Rat& q) {
  Int c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return c;
}

inline Int int_pow(Int base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
  Rat r(int_pow(base.get_num(), e), int_pow(base.get_den(), e));
  r.canonicalize();
  return r;
}

inline Int int_gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline bool is_perfect_square(const Int& a) {
  return a >= 0 && mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

inline Int int_sqrt(const Int& a) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

// Prime support of |n| by trial division; fine for the denominator units and
// entropy bases that occur here (products of small matrix data).
inline std::vector<Int> prime_support(Int n) {
  std::vector<Int> ps;
  if (n < 0) n = -n;
  if (n <= 1) return ps;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

inline double rat_to_double(const Rat& q) { return q.get_d(); }

}  // namespace suspk
