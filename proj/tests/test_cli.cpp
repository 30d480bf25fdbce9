#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "suspk/cli.hpp"
#include "suspk/json_io.hpp"

using namespace suspk;

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream ss;
  int code = run_cli(args, ss);
  return {code, ss.str()};
}

Json parsed(const RunResult& r) { return Json::parse(r.out); }

const char* kFib = R"({"kind":"substitution","alphabet":["a","b"],"rules":{"a":"ab","b":"a"}})";
const char* kDyadic = R"({"kind":"odometer","base":[2]})";
const char* kPoint = R"({"kind":"point"})";
const char* kFullShift = R"({"kind":"sft","adjacency":[[2]]})";
const char* kGoldenSft = R"({"kind":"sft","adjacency":[[1,1],[1,0]]})";

}  // namespace

TEST_CASE("invariant report documents both K-groups and the trace range") {
  auto r = run({"invariant", "--system", kFib, "--t", "sqrt5"});
  REQUIRE(r.code == 0);
  Json j = parsed(r);
  CHECK(j["k1"] == "isomorphic_to_k0");
  CHECK(j["k0"]["summands"] == Json::array({"Z", "dimension_group"}));
  CHECK(j["k0"]["diagram"]["incidence"] == Json::parse("[[1,1],[1,0]]"));
  CHECK(j["k0"]["order_unit"][0] == 1);
  CHECK(j["k0"]["order_unit"][1]["level"] == 0);
  CHECK(j["unimodular"] == true);
  // sqrt5 = -1 + 2*theta in the golden field
  CHECK(j["t"] == Json::array({"-1", "2"}));
  CHECK(j["trace_range"]["unit"] == Json::array({"1", "0"}));
  CHECK(j["trace_range"]["gens"] ==
        Json::parse(R"([["1","0"],["3","-1"],["-4","3"]])"));
  REQUIRE(j["assumptions"].size() == 1);
  CHECK(j["assumptions"][0] == "time-t map assumed minimal (irrational t; bad set countable)");
}

TEST_CASE("emitted invariants re-parse and re-emit byte-identically") {
  for (auto [sys, t] : {std::pair<const char*, const char*>{kFib, "sqrt5"},
                        {kDyadic, "sqrt2"},
                        {kPoint, "sqrt2_plus_1"},
                        {kFib, "sqrt5_minus_2"}}) {
    CAPTURE(sys);
    CAPTURE(t);
    auto r = run({"invariant", "--system", sys, "--t", t});
    REQUIRE(r.code == 0);
    ElliottInvariant inv = invariant_from_json(parsed(r));
    CHECK(dump_json(invariant_to_json(inv)) == r.out);
  }
}

TEST_CASE("repeated runs are byte-deterministic") {
  std::vector<std::vector<std::string>> cmds = {
      {"describe", "--system", kFib},
      {"invariant", "--system", kDyadic, "--t", "sqrt2"},
      {"entropy", "--system", kGoldenSft, "--t", "sqrt2"},
      {"estimate-entropy", "--system", kFullShift, "--t", "1/2", "--n", "8", "--eps", "1/4"},
      {"measure", "--system", kFib, "--word", "ab", "--from", "0", "--to", "1/3"},
  };
  for (const auto& cmd : cmds) {
    CAPTURE(cmd[0]);
    auto r1 = run(cmd);
    auto r2 = run(cmd);
    REQUIRE(r1.code == 0);
    CHECK(r1.out == r2.out);
  }
}

TEST_CASE("describe reports the diagram, Perron data, and complexity") {
  auto r = run({"describe", "--system", kFib});
  REQUIRE(r.code == 0);
  Json j = parsed(r);
  CHECK(j["primitive"] == true);
  CHECK(j["aperiodicity_screen"] == "passed");
  CHECK(j["diagram"]["incidence"] == Json::parse("[[1,1],[1,0]]"));
  CHECK(j["diagram"]["unit_vector"] == Json::parse("[1,1]"));
  CHECK(j["field"]["min_poly"] == Json::parse("[-1,-1,1]"));
  CHECK(j["lambda"] == Json::array({"0", "1"}));
  CHECK(j["rank"] == 2);
  // p(n) = n + 1 for the golden substitution
  CHECK(j["factor_complexity"] == Json::parse("[2,3,4,5,6,7,8,9]"));
  CHECK(j["trace_vector"].size() == 2);

  auto ro = run({"describe", "--system", kDyadic});
  REQUIRE(ro.code == 0);
  Json jo = parsed(ro);
  CHECK(jo["aperiodicity_screen"] == "not_applicable");
  CHECK(jo["lambda"] == Json::array({"2"}));
  CHECK(!jo.contains("factor_complexity"));
}

TEST_CASE("trace-range emits a standalone module document") {
  auto r = run({"trace-range", "--system", kDyadic, "--t", "sqrt2"});
  REQUIRE(r.code == 0);
  Json j = parsed(r);
  CHECK(j["unit"] == Json::array({"2", "0"}));
  CHECK(j["gens"] == Json::parse(R"([["1","0"],["0","1"]])"));

  // Doubling the irrational generator is harmless over Z[1/2].
  Json alt = j;
  alt["gens"][1] = Json::array({"0", "2"});
  auto eq = run({"compare-ranges", "--first", r.out, "--second", alt.dump()});
  REQUIRE(eq.code == 0);
  CHECK(parsed(eq)["equal"] == true);

  // Scaling it by 3/2 is not.
  alt["gens"][1] = Json::array({"0", "3/2"});
  auto ne = run({"compare-ranges", "--first", r.out, "--second", alt.dump()});
  REQUIRE(ne.code == 0);
  CHECK(parsed(ne)["equal"] == false);
}

TEST_CASE("compare-ranges accepts invariant documents and module documents alike") {
  auto inv = run({"invariant", "--system", kFib, "--t", "sqrt5"});
  REQUIRE(inv.code == 0);
  const char* module_doc =
      R"({"field":{"min_poly":[-1,-1,1],"root_interval":["0","2"]},)"
      R"("unit":["1","0"],"gens":[["1","0"],["3","-1"],["-4","3"]]})";
  auto r = run({"compare-ranges", "--first", inv.out, "--second", module_doc});
  REQUIRE(r.code == 0);
  CHECK(parsed(r)["equal"] == true);
}

TEST_CASE("rotation-compare decides rotation-algebra isomorphism") {
  auto yes = run({"rotation-compare", "--t1", "sqrt2", "--t2", "sqrt2_plus_3"});
  REQUIRE(yes.code == 0);
  CHECK(parsed(yes)["isomorphic"] == true);

  // sqrt2 / 2 generates a strictly smaller lattice
  const char* half =
      R"({"field":{"min_poly":[-2,0,1],"root_interval":["0","3"]},"value":["0","1/2"]})";
  auto no = run({"rotation-compare", "--t1", "sqrt2", "--t2", half});
  REQUIRE(no.code == 0);
  CHECK(parsed(no)["isomorphic"] == false);

  auto same = run({"rotation-compare", "--t1", half, "--t2", half});
  REQUIRE(same.code == 0);
  CHECK(parsed(same)["isomorphic"] == true);
}

TEST_CASE("compare-invariants reproduces the reference verdicts") {
  auto p1 = run({"invariant", "--system", kPoint, "--t", "sqrt2"});
  auto p2 = run({"invariant", "--system", kPoint, "--t", "sqrt2_plus_1"});
  REQUIRE(p1.code == 0);
  REQUIRE(p2.code == 0);

  // same trace range, so the screen cannot separate them
  auto und = run({"compare-invariants", "--first", p1.out, "--second", p2.out});
  REQUIRE(und.code == 0);
  Json ju = parsed(und);
  CHECK(ju["verdict"] == "undecided");
  for (const Json& c : ju["conditions"]) CHECK(c["passed"] == true);

  // halving the angle changes the trace range
  const char* half_doc =
      R"({"k0":{"diagram":{"incidence":[[1]],"unit_vector":[1]}},)"
      R"("field":{"min_poly":[-2,0,1],"root_interval":["0","3"]},"t":["0","1/2"]})";
  auto ne = run({"compare-invariants", "--first", p1.out, "--second", half_doc});
  REQUIRE(ne.code == 0);
  CHECK(parsed(ne)["verdict"] == "not_isomorphic");

  auto self = run({"compare-invariants", "--first", p1.out, "--second", p1.out});
  REQUIRE(self.code == 0);
  CHECK(parsed(self)["verdict"] == "undecided");
}

TEST_CASE("check-certificate certifies the telescoped presentation") {
  auto a = run({"invariant", "--system", kFib, "--t", "sqrt5"});
  REQUIRE(a.code == 0);
  const char* telescoped =
      R"({"k0":{"diagram":{"incidence":[[2,1],[1,1]],"unit_vector":[1,1]}},)"
      R"("field":{"min_poly":[1,-3,1],"root_interval":["2","3"]},"t":["-3","2"]})";
  const char* cert = R"({"block":[[1,0],[0,1]],"source_level_offset":2,"target_level_offset":1})";
  auto r = run({"check-certificate", "--first", a.out, "--second", telescoped,
                "--certificate", cert});
  REQUIRE(r.code == 0);
  Json j = parsed(r);
  CHECK(j["verdict"] == "isomorphic_certified");
  for (const Json& c : j["conditions"]) CHECK(c["passed"] == true);

  // an unjustified unit rescaling downgrades the verdict, never flips it
  const char* bad = R"({"block":[[1,0],[0,1]],"source_level_offset":2,)"
                    R"("target_level_offset":1,"z_block":2})";
  auto rb = run({"check-certificate", "--first", a.out, "--second", telescoped,
                 "--certificate", bad});
  REQUIRE(rb.code == 0);
  CHECK(parsed(rb)["verdict"] == "undecided");
}

TEST_CASE("entropy reports exact symbolic values") {
  auto r = run({"entropy", "--system", kFullShift, "--t", "1/2"});
  REQUIRE(r.code == 0);
  Json j = parsed(r);
  CHECK(j["exact"]["coefficient"] == "1/2");
  CHECK(j["exact"]["log_base"] == "2");
  CHECK(!j["exact"].contains("scale"));
  CHECK(j["approx"].get<double>() == doctest::Approx(0.5 * std::log(2.0)));

  auto g = run({"entropy", "--system", kGoldenSft, "--t", "sqrt2"});
  REQUIRE(g.code == 0);
  Json jg = parsed(g);
  CHECK(jg["exact"]["coefficient"] == "1");
  CHECK(jg["exact"]["log_base"]["value"] == Json::array({"0", "1"}));
  CHECK(jg["exact"]["log_base"]["field"]["min_poly"] == Json::parse("[-1,-1,1]"));
  CHECK(jg["exact"]["scale"]["value"] == Json::array({"0", "1"}));
  double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(jg["approx"].get<double>() == doctest::Approx(std::sqrt(2.0) * std::log(phi)));

  // substitutions have zero entropy at every time
  auto z = run({"entropy", "--system", kFib, "--t", "sqrt2"});
  REQUIRE(z.code == 0);
  Json jz = parsed(z);
  CHECK(jz["exact"]["coefficient"] == "0");
  CHECK(jz["approx"].get<double>() == 0.0);

  // powers collapse into the coefficient
  auto p = run({"entropy", "--system", R"({"kind":"sft","adjacency":[[4]]})", "--t", "1"});
  REQUIRE(p.code == 0);
  Json jp = parsed(p);
  CHECK(jp["exact"]["coefficient"] == "2");
  CHECK(jp["exact"]["log_base"] == "2");
}

TEST_CASE("estimate-entropy reports exact counts and optional audits") {
  auto r = run({"estimate-entropy", "--system", kFullShift, "--t", "1/2", "--n", "12",
                "--eps", "1/10"});
  REQUIRE(r.code == 0);
  Json j = parsed(r);
  CHECK(j["counts"]["full"] == "40960");
  CHECK(j["counts"]["half"] == "5120");
  CHECK(j["fibers"] == 7);
  CHECK(j["estimate"].get<double>() == doctest::Approx(0.5 * std::log(2.0)));
  CHECK(!j.contains("audit"));

  auto au = run({"estimate-entropy", "--system", kFullShift, "--t", "1/2", "--n", "4",
                 "--eps", "1/4", "--audit"});
  REQUIRE(au.code == 0);
  Json ja = parsed(au);
  CHECK(ja["audit"]["candidates"] == 256);
  CHECK(ja["audit"]["separated"] == true);
  Rat mind = rat_from_string(ja["audit"]["min_distance"].get<std::string>());
  CHECK(mind >= Rat(1, 8));
}

TEST_CASE("measure evaluates cylinder-times-interval boxes exactly") {
  auto r = run({"measure", "--system", kFib, "--word", "a", "--to", "1/2"});
  REQUIRE(r.code == 0);
  Json j = parsed(r);
  CHECK(j["measure"]["value"] == Json::array({"-1/2", "1/2"}));  // (theta - 1) / 2
  CHECK(j["approx"].get<double>() == doctest::Approx((std::sqrt(5.0) - 1.0) / 4.0));

  auto o = run({"measure", "--system", kDyadic, "--digits", "1,0,1"});
  REQUIRE(o.code == 0);
  CHECK(parsed(o)["measure"]["value"] == Json::array({"1/8"}));

  auto p = run({"measure", "--system", kPoint, "--from", "1/4", "--to", "1"});
  REQUIRE(p.code == 0);
  CHECK(parsed(p)["measure"]["value"] == Json::array({"3/4"}));
}

TEST_CASE("system documents load from files as well as inline") {
  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path() / "suspk_cli_system.json";
  {
    std::ofstream out(tmp);
    out << kFib;
  }
  auto from_file = run({"describe", "--system", tmp.string()});
  auto inline_doc = run({"describe", "--system", kFib});
  fs::remove(tmp);
  REQUIRE(from_file.code == 0);
  CHECK(from_file.out == inline_doc.out);

  auto missing = run({"describe", "--system", "/nonexistent/system.json"});
  CHECK(missing.code == 2);
  CHECK(parsed(missing)["error"]["code"] == "ParseError");
}

TEST_CASE("usage errors exit 2 and domain errors exit 1") {
  struct Case {
    std::vector<std::string> args;
    int code;
    const char* error_code;
  };
  std::vector<Case> cases = {
      {{"frobnicate"}, 2, "ParseError"},
      {{}, 2, "ParseError"},
      {{"invariant", "--system", kFib}, 2, "ParseError"},       // missing --t
      {{"invariant", "--bogus", "x"}, 2, "ParseError"},         // unknown option
      {{"describe", "--system", "not json at all"}, 2, "ParseError"},
      {{"invariant", "--system", kFullShift, "--t", "sqrt2"}, 2, "ParseError"},  // sft here
      {{"invariant", "--system", kPoint, "--t", "1/2"}, 1, "RationalTime"},
      {{"invariant", "--system", kPoint, "--t", "sqrt4"}, 1, "RationalTime"},  // sqrt4 = 2
      {{"entropy", "--system", R"({"kind":"sft","adjacency":[[0,1],[0,0]]})", "--t", "1"},
       1, "NotPrimitive"},
      {{"estimate-entropy", "--system", kFullShift, "--t", "sqrt2", "--n", "4",
        "--eps", "1/4"}, 2, "ParseError"},  // estimator needs rational t
      {{"estimate-entropy", "--system", kPoint, "--t", "1/2", "--n", "4", "--eps", "1/4"},
       2, "ParseError"},
      {{"estimate-entropy", "--system", kFullShift, "--t", "1/2", "--n", "12",
        "--eps", "1/10", "--budget", "10", "--audit"}, 1, "HorizonTooLarge"},
      {{"measure", "--system", kFib, "--word", "a", "--digits", "1"}, 2, "ParseError"},
      {{"measure", "--system", kFib, "--word", "bb"}, 1, "IllegalWord"},
      {{"rotation-compare", "--t1", "1/3", "--t2", "sqrt2"}, 1, "RationalTime"},
      {{"invariant", "--system", kFib, "--t", "sqrt5", "--t", "sqrt5"}, 2, "ParseError"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.args.empty() ? std::string("<none>") : c.args[0]);
    CAPTURE(c.error_code);
    auto r = run(c.args);
    CHECK(r.code == c.code);
    Json j = parsed(r);
    CHECK(j["error"]["code"] == c.error_code);
  }
}

TEST_CASE("incompatible trace ranges surface their domain errors") {
  // an irrational unit cannot index a divisibility family
  const char* bad_unit =
      R"({"field":{"min_poly":[-2,0,1],"root_interval":["0","3"]},)"
      R"("unit":["0","1"],"gens":[["1","0"]]})";
  const char* ok =
      R"({"field":{"min_poly":[0,1],"root_interval":["-1","1"]},"unit":["1"],"gens":[["1"]]})";
  auto r = run({"compare-ranges", "--first", bad_unit, "--second", ok});
  CHECK(r.code == 1);
  CHECK(parsed(r)["error"]["code"] == "UnsupportedUnits");

  const char* sqrt2_range =
      R"({"field":{"min_poly":[-2,0,1],"root_interval":["0","3"]},)"
      R"("unit":["1","0"],"gens":[["1","0"],["0","1"]]})";
  const char* sqrt5_range =
      R"({"field":{"min_poly":[-5,0,1],"root_interval":["0","3"]},)"
      R"("unit":["1","0"],"gens":[["1","0"],["0","1"]]})";
  auto m = run({"compare-ranges", "--first", sqrt2_range, "--second", sqrt5_range});
  CHECK(m.code == 1);
  CHECK(parsed(m)["error"]["code"] == "FieldMismatch");
}
