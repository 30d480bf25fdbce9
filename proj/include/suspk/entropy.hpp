#pragma once

#include <optional>
#include <string>
#include <vector>

#include "suspk/number_field.hpp"
#include "suspk/systems.hpp"

namespace suspk {

// Exact entropy value coefficient * |scale| * log(base), kept symbolic so that
// equality questions are decided without floating point. Normal form: a
// rational base is an integer >= 2 that is not a perfect power; an irrational
// base has no rational power (with exponent up to twice its degree); `scale`
// is absent when its value is rational (folded into the coefficient).
struct ExactEntropy {
  bool zero = true;
  Rat coefficient;
  std::optional<FieldElement> base;
  std::optional<FieldElement> scale;
};

ExactEntropy sft_entropy(const Sft& s);  // log of the Perron root; NotPrimitive
ExactEntropy substitution_entropy(const Substitution& s);  // always zero
// Entropy of the time-t map: h * |t|. Rational t folds into the coefficient
// (t = 0 gives zero); irrational t multiplies the scale (FieldMismatch when
// the fields do not embed).
ExactEntropy suspension_entropy(const ExactEntropy& h, const FieldElement& t);

enum class EntropyOrder { Equal, NotEqual, Undecided };
// Decides c1*s1*log(b1) = c2*s2*log(b2) symbolically. Distinct normalized
// rational bases (and rational-vs-irrational bases) can always be separated;
// two irrational bases compare through a small search for a multiplicative
// relation b1^p = b2^q and stay Undecided when none is found.
EntropyOrder entropy_compare(const ExactEntropy& a, const ExactEntropy& b);

double entropy_to_double(const ExactEntropy& e);

// --- finite-horizon estimator -----------------------------------------------

// Candidate family used by the exact separation audit: for each fiber section
// s, every legal word long enough to shadow the orbit through time n-1 with
// radius-kappa padding, extended on both sides to its lexicographically least
// legal enlargement so every metric probe stays in range. For an SFT the
// letters are edge ids of the adjacency presentation.
struct SeparationFamily {
  std::vector<std::string> words;
  std::vector<int> fiber;                 // fiber index per word
  std::vector<Rat> fiber_pos;             // fiber section s
  std::vector<std::vector<long>> shifts;  // per fiber: floor(s + j*|t|), j < n
  std::vector<std::vector<Rat>> fracs;    // per fiber: frac(s + j*|t|), j < n
  int origin = 0;                         // word index of base coordinate 0
  long n = 0;
  int kappa = 0;
  Rat delta;                              // separation threshold, eps/2
};

struct SeparationCheck {
  long pairs = 0;
  bool separated = true;
  Rat min_distance;  // exact min over pairs of the time-n separation; 0 if < 2 words
};

// Reference implementation and OpenMP kernel; both compute the same exact
// rationals and return identical results on any schedule.
SeparationCheck verify_separation_serial(const SeparationFamily& fam);
SeparationCheck verify_separation_parallel(const SeparationFamily& fam);

SeparationFamily separation_family(const Sft& base, const Rat& t, long n, const Rat& eps,
                                   long budget);
SeparationFamily separation_family(const Substitution& base, const Rat& t, long n,
                                   const Rat& eps, long budget);

struct EstimateReport {
  double estimate = 0.0;
  long n = 0;
  Rat t, eps;
  Int count_full, count_half;  // separated-family sizes at horizons n, ceil(n/2)
  long fibers = 0;
  bool audited = false;
  long candidates = 0;
  bool separated = false;
  Rat min_distance;
};

// Growth-rate estimate from exact separated-word counts at two horizons;
// t must be rational here. `budget` caps every word enumeration
// (HorizonTooLarge). With `audit` the horizon-n family is enumerated
// explicitly and its pairwise separation verified exactly.
EstimateReport estimate_suspension_entropy(const Sft& base, const Rat& t, long n,
                                           const Rat& eps, long budget = 10000000,
                                           bool audit = false);
EstimateReport estimate_suspension_entropy(const Substitution& base, const Rat& t, long n,
                                           const Rat& eps, long budget = 10000000,
                                           bool audit = false);

// --- invariant measure ------------------------------------------------------

// Cylinder in the base: a word for substitution systems (empty allowed), a
// digit string for odometers.
struct Cylinder {
  std::string word;
  std::vector<long> digits;
};

// Exact measure of cylinder x [a, b) under the unique invariant probability
// measure of the suspension, 0 <= a <= b <= 1. IllegalWord for cylinders
// outside the language.
FieldElement suspension_measure(const BaseSystem& base, const Cylinder& cyl, const Rat& a,
                                const Rat& b);

}  // namespace suspk
