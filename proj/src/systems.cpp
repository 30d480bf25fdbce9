#include "suspk/systems.hpp"

#include <algorithm>
#include <set>

#include "suspk/errors.hpp"

namespace suspk {

std::string Substitution::apply(const std::string& w) const {
  std::string out;
  for (char a : w) out += rule(a);
  return out;
}

int Substitution::index_of(char a) const {
  auto pos = alphabet.find(a);
  if (pos == std::string::npos) fail(ErrorCode::IllegalWord, std::string("letter '") + a + "' not in alphabet");
  return static_cast<int>(pos);
}

IntMatrix substitution_incidence(const Substitution& s) {
  int k = static_cast<int>(s.alphabet.size());
  IntMatrix m(k, k);
  for (int j = 0; j < k; ++j)
    for (char a : s.rule(s.alphabet[j])) m.at(s.index_of(a), j) += 1;
  return m;
}

Substitution make_substitution(const std::string& alphabet,
                               const std::map<char, std::string>& rules) {
  if (alphabet.empty()) fail(ErrorCode::ParseError, "empty alphabet");
  std::set<char> seen(alphabet.begin(), alphabet.end());
  if (seen.size() != alphabet.size()) fail(ErrorCode::ParseError, "repeated letter in alphabet");
  Substitution s{alphabet, rules};
  for (char a : alphabet) {
    auto it = rules.find(a);
    if (it == rules.end() || it->second.empty())
      fail(ErrorCode::ParseError, std::string("missing or empty rule for letter '") + a + "'");
    for (char b : it->second)
      if (!seen.count(b))
        fail(ErrorCode::ParseError, std::string("rule image uses unknown letter '") + b + "'");
  }
  if (rules.size() != alphabet.size())
    fail(ErrorCode::ParseError, "rule present for a letter outside the alphabet");
  if (!check_primitive(substitution_incidence(s)))
    fail(ErrorCode::NotPrimitive, "substitution incidence matrix is not primitive");
  // Aperiodicity screen: complexity of an aperiodic minimal subshift satisfies
  // p(n) >= n+1; a failure certifies a periodic system.
  for (int n = 1; n <= 12; ++n)
    if (factor_complexity(s, n) < n + 1)
      fail(ErrorCode::AperiodicityCheckFailed,
           "factor complexity p(" + std::to_string(n) + ") < " + std::to_string(n + 1));
  return s;
}

Odometer make_odometer(const std::vector<long>& bases) {
  if (bases.empty()) fail(ErrorCode::DegenerateBase, "empty base list");
  for (long b : bases)
    if (b < 2) fail(ErrorCode::DegenerateBase, "odometer base " + std::to_string(b) + " < 2");
  return Odometer{bases};
}

StationaryBVDiagram make_diagram(const IntMatrix& incidence, const std::vector<Int>& unit_vec) {
  if (incidence.rows != incidence.cols) fail(ErrorCode::NotSquare, "incidence must be square");
  if (incidence.rows < 1) fail(ErrorCode::ParseError, "diagram needs k >= 1");
  if (static_cast<int>(unit_vec.size()) != incidence.rows)
    fail(ErrorCode::DimensionMismatch, "unit vector length != k");
  for (const auto& u : unit_vec)
    if (u < 1) fail(ErrorCode::ParseError, "unit vector entries must be >= 1");
  if (!check_primitive(incidence))
    fail(ErrorCode::NotPrimitive, "incidence matrix is not primitive");
  return StationaryBVDiagram{incidence.rows, incidence, unit_vec};
}

StationaryBVDiagram substitution_to_bv(const Substitution& s) {
  int k = static_cast<int>(s.alphabet.size());
  return make_diagram(substitution_incidence(s), std::vector<Int>(k, Int(1)));
}

StationaryBVDiagram odometer_to_bv(const Odometer& o) {
  Int prod = 1;
  for (long b : o.bases) prod *= b;
  IntMatrix m(1, 1);
  m.at(0, 0) = prod;
  return make_diagram(m, {Int(1)});
}

StationaryBVDiagram point_to_bv() {
  return make_diagram(IntMatrix::identity(1), {Int(1)});
}

StationaryBVDiagram system_to_bv(const BaseSystem& sys) {
  return std::visit(
      [](const auto& s) -> StationaryBVDiagram {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Substitution>) return substitution_to_bv(s);
        if constexpr (std::is_same_v<T, Odometer>) return odometer_to_bv(s);
        if constexpr (std::is_same_v<T, PointSystem>) return point_to_bv();
      },
      sys);
}

std::vector<std::string> substitution_factors(const Substitution& s, int n) {
  if (n <= 0) return {""};
  std::map<char, std::string> words;
  for (char a : s.alphabet) words[a] = std::string(1, a);
  std::set<std::string> factors, prev;
  constexpr std::size_t kMaxTotal = 16u << 20;
  for (int iter = 0; iter < 64; ++iter) {
    std::size_t total = 0, min_len = SIZE_MAX;
    for (char a : s.alphabet) {
      words[a] = s.apply(words[a]);
      total += words[a].size();
      min_len = std::min(min_len, words[a].size());
    }
    if (total > kMaxTotal)
      fail(ErrorCode::HorizonTooLarge, "factor enumeration exceeded the word-length cap");
    prev.swap(factors);
    factors.clear();
    for (char a : s.alphabet) {
      const std::string& w = words[a];
      for (std::size_t i = 0; i + n <= w.size(); ++i) factors.insert(w.substr(i, n));
    }
    if (factors == prev && min_len > 2 * static_cast<std::size_t>(n))
      return {factors.begin(), factors.end()};
  }
  fail(ErrorCode::Internal, "factor set did not stabilize");
}

long factor_complexity(const Substitution& s, int n) {
  return static_cast<long>(substitution_factors(s, n).size());
}

bool word_is_factor(const Substitution& s, const std::string& w) {
  if (w.empty()) return true;
  for (char a : w)
    if (s.alphabet.find(a) == std::string::npos) return false;
  auto fs = substitution_factors(s, static_cast<int>(w.size()));
  return std::binary_search(fs.begin(), fs.end(), w);
}

}  // namespace suspk
