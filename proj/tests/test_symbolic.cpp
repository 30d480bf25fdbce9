#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <set>

#include "suspk/errors.hpp"
#include "suspk/systems.hpp"

using namespace suspk;

namespace {

template <typename F>
std::optional<ErrorCode> thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

Substitution fibonacci() { return make_substitution("ab", {{'a', "ab"}, {'b', "a"}}); }
Substitution thue_morse() { return make_substitution("ab", {{'a', "ab"}, {'b', "ba"}}); }

// Independent oracle: scan a long iterated image directly.
long scan_complexity(const Substitution& s, int n, int iters) {
  std::set<std::string> factors;
  for (char a : s.alphabet) {
    std::string w(1, a);
    for (int i = 0; i < iters; ++i) w = s.apply(w);
    for (std::size_t i = 0; i + n <= w.size(); ++i) factors.insert(w.substr(i, n));
  }
  return static_cast<long>(factors.size());
}

}  // namespace

TEST_CASE("substitution incidence matrices") {
  CHECK(substitution_incidence(fibonacci()) == IntMatrix{{1, 1}, {1, 0}});
  CHECK(substitution_incidence(thue_morse()) == IntMatrix{{1, 1}, {1, 1}});
  // column sums equal rule lengths
  Substitution f = fibonacci();
  IntMatrix m = substitution_incidence(f);
  for (int j = 0; j < 2; ++j) {
    Int sum = 0;
    for (int i = 0; i < 2; ++i) sum += m.at(i, j);
    CHECK(sum == static_cast<long>(f.rule(f.alphabet[j]).size()));
  }
}

TEST_CASE("substitution validation") {
  CHECK(thrown_code([] { make_substitution("ab", {{'a', "a"}, {'b', "ab"}}); }) ==
        ErrorCode::NotPrimitive);
  CHECK(thrown_code([] { make_substitution("ab", {{'a', "ab"}, {'b', "ab"}}); }) ==
        ErrorCode::AperiodicityCheckFailed);  // language of (ab)^inf is periodic
  CHECK(thrown_code([] { make_substitution("ab", {{'a', "ab"}}); }) == ErrorCode::ParseError);
  CHECK(thrown_code([] { make_substitution("ab", {{'a', "ab"}, {'b', ""}}); }) ==
        ErrorCode::ParseError);
  CHECK(thrown_code([] { make_substitution("ab", {{'a', "ac"}, {'b', "a"}}); }) ==
        ErrorCode::ParseError);
  CHECK(thrown_code([] { make_substitution("aa", {{'a', "aa"}}); }) == ErrorCode::ParseError);
  CHECK(thrown_code([] { make_substitution("", {}); }) == ErrorCode::ParseError);
  CHECK(thrown_code([] {
          make_substitution("a", {{'a', "aa"}, {'b', "a"}});
        }) == ErrorCode::ParseError);  // rule for a letter outside the alphabet
}

TEST_CASE("factor complexity") {
  Substitution fib = fibonacci();
  // Sturmian: p(n) = n + 1
  for (int n = 1; n <= 8; ++n) CHECK(factor_complexity(fib, n) == n + 1);
  CHECK(factor_complexity(fib, 1) == 2);
  CHECK(factor_complexity(fib, 3) == 4);
  Substitution tm = thue_morse();
  long tm_expected[] = {2, 4, 6, 10, 12, 16};
  for (int n = 1; n <= 6; ++n) CHECK(factor_complexity(tm, n) == tm_expected[n - 1]);
  // against the direct long-word scan
  for (int n = 1; n <= 6; ++n) {
    CHECK(factor_complexity(fib, n) == scan_complexity(fib, n, 14));
    CHECK(factor_complexity(tm, n) == scan_complexity(tm, n, 10));
  }
  // monotone in n; p(1) = alphabet size
  long prev = 0;
  for (int n = 1; n <= 10; ++n) {
    long p = factor_complexity(fib, n);
    CHECK(p >= prev);
    prev = p;
  }
  CHECK(factor_complexity(tm, 1) == 2);
  CHECK(factor_complexity(fib, 0) == 1);
}

TEST_CASE("factor enumeration and membership") {
  Substitution fib = fibonacci();
  auto f2 = substitution_factors(fib, 2);
  CHECK(f2 == std::vector<std::string>{"aa", "ab", "ba"});
  CHECK(word_is_factor(fib, "ab"));
  CHECK(word_is_factor(fib, "aba"));
  CHECK(!word_is_factor(fib, "bb"));
  CHECK(word_is_factor(fib, ""));
  CHECK(!word_is_factor(fib, "abc"));
  CHECK(word_is_factor(fib, "a"));
}

TEST_CASE("odometers") {
  CHECK(odometer_to_bv(make_odometer({2})).incidence == IntMatrix{{2}});
  CHECK(odometer_to_bv(make_odometer({2, 3})).incidence == IntMatrix{{6}});
  CHECK(odometer_to_bv(make_odometer({2, 3})).unit_vec == std::vector<Int>{Int(1)});
  CHECK(thrown_code([] { make_odometer({1}); }) == ErrorCode::DegenerateBase);
  CHECK(thrown_code([] { make_odometer({2, 0}); }) == ErrorCode::DegenerateBase);
  CHECK(thrown_code([] { make_odometer({}); }) == ErrorCode::DegenerateBase);
}

TEST_CASE("diagrams") {
  StationaryBVDiagram pt = point_to_bv();
  CHECK(pt.k == 1);
  CHECK(pt.incidence == IntMatrix{{1}});
  StationaryBVDiagram fb = substitution_to_bv(fibonacci());
  CHECK(fb.k == 2);
  CHECK(fb.unit_vec == std::vector<Int>(2, Int(1)));
  CHECK(thrown_code([] { make_diagram(IntMatrix{{0, 1}, {1, 0}}, {Int(1), Int(1)}); }) ==
        ErrorCode::NotPrimitive);
  CHECK(thrown_code([] { make_diagram(IntMatrix{{1, 1}, {1, 0}}, {Int(1), Int(0)}); }) ==
        ErrorCode::ParseError);
  CHECK(thrown_code([] { make_diagram(IntMatrix{{1, 1}, {1, 0}}, {Int(1)}); }) ==
        ErrorCode::DimensionMismatch);
  // system_to_bv dispatches across the variant
  CHECK(system_to_bv(BaseSystem{PointSystem{}}).incidence == IntMatrix{{1}});
  CHECK(system_to_bv(BaseSystem{make_odometer({2})}).incidence == IntMatrix{{2}});
  CHECK(system_to_bv(BaseSystem{fibonacci()}).incidence == IntMatrix{{1, 1}, {1, 0}});
}
