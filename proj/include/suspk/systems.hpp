#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "suspk/int_matrix.hpp"

namespace suspk {

// A primitive substitution on a finite alphabet of single-character letters.
struct Substitution {
  std::string alphabet;                // distinct letters, fixed order
  std::map<char, std::string> rules;   // nonempty images over the alphabet

  const std::string& rule(char a) const { return rules.at(a); }
  std::string apply(const std::string& w) const;
  int index_of(char a) const;
};

struct Odometer {
  std::vector<long> bases;  // each >= 2
};

struct PointSystem {};

// Subshift of finite type presented by a nonnegative adjacency (edge-count)
// matrix; used by the entropy module only.
struct Sft {
  IntMatrix adjacency;
};

using BaseSystem = std::variant<Substitution, Odometer, PointSystem>;

// A stationary Bratteli-Vershik diagram: one incidence matrix repeated on
// every level, with a distinguished positive unit vector at the top.
struct StationaryBVDiagram {
  int k = 0;
  IntMatrix incidence;
  std::vector<Int> unit_vec;
};

// Validates primitivity (NotPrimitive) and runs the complexity-based
// aperiodicity screen p(n) >= n+1 for n = 1..12 (AperiodicityCheckFailed).
Substitution make_substitution(const std::string& alphabet,
                               const std::map<char, std::string>& rules);

Odometer make_odometer(const std::vector<long>& bases);  // DegenerateBase

// Incidence counts occurrences of letter i in the image of letter j.
IntMatrix substitution_incidence(const Substitution& s);

StationaryBVDiagram substitution_to_bv(const Substitution& s);
StationaryBVDiagram odometer_to_bv(const Odometer& o);
StationaryBVDiagram point_to_bv();
StationaryBVDiagram system_to_bv(const BaseSystem& sys);

StationaryBVDiagram make_diagram(const IntMatrix& incidence, const std::vector<Int>& unit_vec);

// Number of distinct length-n factors of the substitution language,
// computed by iterating images until the factor set stabilizes.
long factor_complexity(const Substitution& s, int n);

// All distinct length-n factors, sorted; the enumeration behind
// factor_complexity, exposed for the entropy estimator.
std::vector<std::string> substitution_factors(const Substitution& s, int n);

bool word_is_factor(const Substitution& s, const std::string& w);

}  // namespace suspk
