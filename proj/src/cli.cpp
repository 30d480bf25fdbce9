#include "suspk/cli.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>
#include <vector>

#include "suspk/json_io.hpp"

namespace suspk {

namespace {

struct CommandSpec {
  const char* name;
  std::vector<const char*> required;
  std::vector<const char*> optional;
  std::vector<const char*> flags;  // boolean, no value
};

const std::vector<CommandSpec>& command_table() {
  static const std::vector<CommandSpec> table = {
      {"describe", {"system"}, {}, {}},
      {"invariant", {"system", "t"}, {}, {}},
      {"trace-range", {"system", "t"}, {}, {}},
      {"compare-ranges", {"first", "second"}, {}, {}},
      {"rotation-compare", {"t1", "t2"}, {}, {}},
      {"compare-invariants", {"first", "second"}, {}, {}},
      {"check-certificate", {"first", "second", "certificate"}, {}, {}},
      {"entropy", {"system", "t"}, {}, {}},
      {"estimate-entropy", {"system", "t", "n", "eps"}, {"budget"}, {"audit"}},
      {"measure", {"system"}, {"word", "digits", "from", "to"}, {}},
  };
  return table;
}

std::string usage_text() {
  std::string u = "usage: suspk <command> --<option> <value> ...; commands:";
  for (const CommandSpec& c : command_table()) {
    u += " ";
    u += c.name;
  }
  return u;
}

struct ParsedArgs {
  const CommandSpec* spec = nullptr;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
};

bool contains(const std::vector<const char*>& v, const std::string& s) {
  for (const char* x : v)
    if (s == x) return true;
  return false;
}

ParsedArgs parse_args(const std::vector<std::string>& args) {
  if (args.empty()) fail(ErrorCode::ParseError, usage_text());
  ParsedArgs out;
  for (const CommandSpec& c : command_table())
    if (args[0] == c.name) out.spec = &c;
  if (!out.spec) fail(ErrorCode::ParseError, "unknown command '" + args[0] + "'; " + usage_text());
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0)
      fail(ErrorCode::ParseError, "expected an option, got '" + a + "'");
    std::string name = a.substr(2);
    if (contains(out.spec->flags, name)) {
      out.flags[name] = true;
      continue;
    }
    if (!contains(out.spec->required, name) && !contains(out.spec->optional, name))
      fail(ErrorCode::ParseError,
           "unknown option '--" + name + "' for command '" + out.spec->name + "'");
    if (i + 1 >= args.size()) fail(ErrorCode::ParseError, "option '--" + name + "' needs a value");
    if (!out.values.emplace(name, args[++i]).second)
      fail(ErrorCode::ParseError, "option '--" + name + "' given twice");
  }
  for (const char* r : out.spec->required)
    if (!out.values.count(r))
      fail(ErrorCode::ParseError,
           "command '" + std::string(out.spec->name) + "' requires '--" + r + "'");
  return out;
}

const std::string& need(const ParsedArgs& a, const char* name) { return a.values.at(name); }

std::optional<std::string> opt(const ParsedArgs& a, const char* name) {
  auto it = a.values.find(name);
  if (it == a.values.end()) return std::nullopt;
  return it->second;
}

// Option values that look like JSON are parsed inline; anything else is a
// file path.
Json load_doc(const std::string& v) {
  if (!v.empty() && (v[0] == '{' || v[0] == '[')) return parse_json_text(v);
  std::ifstream in(v);
  if (!in) fail(ErrorCode::ParseError, "cannot read '" + v + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

long long_from_string(const std::string& s) {
  Int v = int_from_string(s);
  if (!v.fits_slong_p()) fail(ErrorCode::ParseError, "integer out of range: '" + s + "'");
  return v.get_si();
}

std::vector<long> parse_digit_list(const std::string& s) {
  std::vector<long> out;
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = s.find(',', pos);
    out.push_back(long_from_string(
        s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

const char* kMinimalityAssumption = "time-t map assumed minimal (irrational t; bad set countable)";

Json cmd_describe(const ParsedArgs& a) {
  BaseSystem base = parse_base_system(load_doc(need(a, "system")));
  StationaryBVDiagram d = system_to_bv(base);
  DimensionGroup dg = dg_from_diagram(d);
  Json j;
  j["system"] = system_to_json(base);
  Json diagram;
  diagram["incidence"] = matrix_to_json(d.incidence);
  diagram["unit_vector"] = int_vec_to_json(d.unit_vec);
  j["diagram"] = std::move(diagram);
  j["primitive"] = check_primitive(d.incidence);
  j["aperiodicity_screen"] =
      std::holds_alternative<Substitution>(base) ? "passed" : "not_applicable";
  j["field"] = field_to_json(dg.field);
  j["lambda"] = fe_to_json(dg.lambda);
  Json tv = Json::array();
  for (const FieldElement& w : dg.trace_vec) tv.push_back(fe_to_json(w));
  j["trace_vector"] = std::move(tv);
  j["rank"] = Json(static_cast<std::int64_t>(dg_rank(dg)));
  j["order_unit"] = group_element_to_json(dg_order_unit(dg));
  if (const auto* s = std::get_if<Substitution>(&base)) {
    Json fc = Json::array();
    for (int n = 1; n <= 8; ++n) fc.push_back(static_cast<std::int64_t>(factor_complexity(*s, n)));
    j["factor_complexity"] = std::move(fc);
  }
  j["notes"] = Json::array(
      {"primitive stationary diagram: the dimension group carries a unique normalized trace"});
  j["assumptions"] = Json::array();
  return j;
}

Json cmd_invariant(const ParsedArgs& a) {
  BaseSystem base = parse_base_system(load_doc(need(a, "system")));
  FieldElement t = parse_time_string(need(a, "t"));
  return invariant_to_json(suspension_invariant(base, t));
}

Json cmd_trace_range(const ParsedArgs& a) {
  BaseSystem base = parse_base_system(load_doc(need(a, "system")));
  FieldElement t = parse_time_string(need(a, "t"));
  Json j = trace_range_to_json(trace_range(suspension_invariant(base, t)));
  j["assumptions"] = Json::array({kMinimalityAssumption});
  return j;
}

Json cmd_compare_ranges(const ParsedArgs& a) {
  TraceRangeModule first = trace_range_from_json(load_doc(need(a, "first")));
  TraceRangeModule second = trace_range_from_json(load_doc(need(a, "second")));
  Json j;
  j["equal"] = trace_range_equal(first, second);
  j["assumptions"] = Json::array();
  return j;
}

Json cmd_rotation_compare(const ParsedArgs& a) {
  FieldElement t1 = parse_time_string(need(a, "t1"));
  FieldElement t2 = parse_time_string(need(a, "t2"));
  Json j;
  j["isomorphic"] = rotation_isomorphic(t1, t2);
  j["assumptions"] = Json::array();
  return j;
}

Json cmd_compare_invariants(const ParsedArgs& a) {
  ElliottInvariant first = invariant_from_json(load_doc(need(a, "first")));
  ElliottInvariant second = invariant_from_json(load_doc(need(a, "second")));
  return comparison_report_to_json(compare_invariants(first, second));
}

Json cmd_check_certificate(const ParsedArgs& a) {
  ElliottInvariant first = invariant_from_json(load_doc(need(a, "first")));
  ElliottInvariant second = invariant_from_json(load_doc(need(a, "second")));
  IsoCertificate cert = certificate_from_json(load_doc(need(a, "certificate")));
  return comparison_report_to_json(verify_iso_certificate(first, second, cert));
}

Json cmd_entropy(const ParsedArgs& a) {
  ParsedSystem sys = parse_system(load_doc(need(a, "system")), true);
  FieldElement t = parse_time_string(need(a, "t"));
  ExactEntropy h;  // odometers and the one-point system have zero entropy
  if (sys.sft)
    h = sft_entropy(*sys.sft);
  else if (const auto* s = std::get_if<Substitution>(&*sys.base))
    h = substitution_entropy(*s);
  Json j = entropy_value_to_json(suspension_entropy(h, t));
  j["assumptions"] = Json::array();
  return j;
}

Json cmd_estimate_entropy(const ParsedArgs& a) {
  ParsedSystem sys = parse_system(load_doc(need(a, "system")), true);
  Rat t = rat_from_string(need(a, "t"));
  long n = long_from_string(need(a, "n"));
  Rat eps = rat_from_string(need(a, "eps"));
  long budget = 10000000;
  if (auto b = opt(a, "budget")) budget = long_from_string(*b);
  bool audit = a.flags.count("audit") > 0;
  EstimateReport r;
  if (sys.sft)
    r = estimate_suspension_entropy(*sys.sft, t, n, eps, budget, audit);
  else if (const auto* s = std::get_if<Substitution>(&*sys.base))
    r = estimate_suspension_entropy(*s, t, n, eps, budget, audit);
  else
    fail(ErrorCode::ParseError, "the estimator supports 'substitution' and 'sft' systems");
  Json j = estimate_report_to_json(r);
  j["assumptions"] = Json::array();
  return j;
}

Json cmd_measure(const ParsedArgs& a) {
  BaseSystem base = parse_base_system(load_doc(need(a, "system")));
  auto word = opt(a, "word");
  auto digits = opt(a, "digits");
  if (word && digits)
    fail(ErrorCode::ParseError, "give at most one of '--word' and '--digits'");
  Cylinder cyl;
  if (word) cyl.word = *word;
  if (digits) cyl.digits = parse_digit_list(*digits);
  Rat from = opt(a, "from") ? rat_from_string(*opt(a, "from")) : Rat(0);
  Rat to = opt(a, "to") ? rat_from_string(*opt(a, "to")) : Rat(1);
  FieldElement v = suspension_measure(base, cyl, from, to);
  Json j;
  j["measure"] = fe_doc_to_json(v);
  j["approx"] = fe_to_double(v);
  j["assumptions"] =
      Json::array({"measure is the unique invariant probability measure of the suspension flow"});
  return j;
}

Json dispatch(const ParsedArgs& a) {
  std::string cmd = a.spec->name;
  if (cmd == "describe") return cmd_describe(a);
  if (cmd == "invariant") return cmd_invariant(a);
  if (cmd == "trace-range") return cmd_trace_range(a);
  if (cmd == "compare-ranges") return cmd_compare_ranges(a);
  if (cmd == "rotation-compare") return cmd_rotation_compare(a);
  if (cmd == "compare-invariants") return cmd_compare_invariants(a);
  if (cmd == "check-certificate") return cmd_check_certificate(a);
  if (cmd == "entropy") return cmd_entropy(a);
  if (cmd == "estimate-entropy") return cmd_estimate_entropy(a);
  return cmd_measure(a);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out) {
  try {
    out << dump_json(dispatch(parse_args(args)));
    return 0;
  } catch (const Error& e) {
    Json err;
    err["code"] = error_code_name(e.code());
    err["message"] = e.what();
    Json doc;
    doc["error"] = std::move(err);
    out << dump_json(doc);
    return e.code() == ErrorCode::ParseError ? 2 : 1;
  } catch (const std::exception& e) {
    Json err;
    err["code"] = error_code_name(ErrorCode::Internal);
    err["message"] = e.what();
    Json doc;
    doc["error"] = std::move(err);
    out << dump_json(doc);
    return 1;
  }
}

}  // namespace suspk
