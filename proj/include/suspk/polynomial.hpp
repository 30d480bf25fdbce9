#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "suspk/rational.hpp"

namespace suspk {

// Dense univariate polynomials, coefficients lowest-degree first.
// Normal form: no trailing (high-degree) zeros; the zero polynomial is {}.
using ZPoly = std::vector<Int>;
using QPoly = std::vector<Rat>;

void zp_normalize(ZPoly& p);
void qp_normalize(QPoly& p);
int zp_deg(const ZPoly& p);  // -1 for zero
int qp_deg(const QPoly& p);

QPoly to_qpoly(const ZPoly& p);
// Clears denominators and divides by the content; leading coefficient > 0.
ZPoly primitive_part(const QPoly& p);
ZPoly zp_primitive(const ZPoly& p);  // content removed, leading coefficient > 0

ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
ZPoly zp_derivative(const ZPoly& p);
Rat zp_eval(const ZPoly& p, const Rat& x);
int zp_sign_at(const ZPoly& p, const Rat& x);

QPoly qp_add(const QPoly& a, const QPoly& b);
QPoly qp_sub(const QPoly& a, const QPoly& b);
QPoly qp_mul(const QPoly& a, const QPoly& b);
QPoly qp_scale(const QPoly& a, const Rat& c);
// Division with remainder over the rationals; b nonzero.
std::pair<QPoly, QPoly> qp_divmod(const QPoly& a, const QPoly& b);
QPoly qp_monic(const QPoly& a);
QPoly qp_gcd(const QPoly& a, const QPoly& b);  // monic, gcd(0,0) = 0
Rat qp_eval(const QPoly& p, const Rat& x);

// If g divides f exactly over the integers, the quotient; otherwise nullopt.
std::optional<ZPoly> zp_divide_exact(const ZPoly& f, const ZPoly& g);

// Yun decomposition of the primitive part: list of (squarefree factor, multiplicity)
// with pairwise-coprime factors whose weighted product is the primitive part.
std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& f);

// Complete factorization of the primitive part into primitive irreducible
// factors with positive leading coefficients, deterministic order.
std::vector<std::pair<ZPoly, int>> factor_poly(const ZPoly& f);
bool is_irreducible(const ZPoly& f);

// Sturm chain of the squarefree part; counts distinct real roots.
class SturmChain {
 public:
  explicit SturmChain(const ZPoly& f);
  // Number of distinct real roots in (lo, hi]; requires lo <= hi.
  int count(const Rat& lo, const Rat& hi) const;
  int count_all() const;
  int variations_at(const Rat& x) const;
  const Rat& cauchy_bound() const { return bound_; }

 private:
  std::vector<ZPoly> chain_;
  Rat bound_;  // all real roots lie strictly inside (-bound_, bound_)
  int var_neg_inf_, var_pos_inf_;
};

// Open interval isolating exactly the largest real root of f (f nonzero,
// squarefree not required); endpoints are non-roots. nullopt if f has no
// real root.
std::optional<std::pair<Rat, Rat>> largest_real_root_interval(const ZPoly& f);

// Halves an isolating interval `steps` times. Requires that (lo, hi) isolate a
// single simple root with sign change across the interval.
void refine_root_interval(const ZPoly& f, Rat& lo, Rat& hi, int steps);

}  // namespace suspk
