#include "suspk/json_io.hpp"

#include <cstdint>
#include <utility>

#include "suspk/errors.hpp"
#include "suspk/perron.hpp"

namespace suspk {

namespace {

const Json& get_field(const Json& j, const char* key) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "expected an object with a '" + std::string(key) + "' key");
  auto it = j.find(key);
  if (it == j.end()) fail(ErrorCode::ParseError, "missing key '" + std::string(key) + "'");
  return *it;
}

std::string get_string(const Json& j, const char* what) {
  if (!j.is_string()) fail(ErrorCode::ParseError, std::string(what) + " must be a string");
  return j.get<std::string>();
}

void require_array(const Json& j, const char* what) {
  if (!j.is_array()) fail(ErrorCode::ParseError, std::string(what) + " must be an array");
}

}  // namespace

Json parse_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::ParseError, "malformed JSON");
  return j;
}

Json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

Int int_from_json(const Json& j) {
  if (j.is_number_unsigned()) return Int(static_cast<unsigned long>(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return int_from_string(j.get<std::string>());
  fail(ErrorCode::ParseError, "expected an integer");
}

long long_from_json(const Json& j) {
  Int v = int_from_json(j);
  if (!v.fits_slong_p()) fail(ErrorCode::ParseError, "integer out of range");
  return v.get_si();
}

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer() || j.is_number_unsigned()) return Rat(int_from_json(j));
  fail(ErrorCode::ParseError, "expected a rational string");
}

Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(int_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix matrix_from_json(const Json& j) {
  require_array(j, "matrix");
  if (j.empty()) fail(ErrorCode::ParseError, "matrix must have at least one row");
  int rows = static_cast<int>(j.size());
  require_array(j[0], "matrix row");
  int cols = static_cast<int>(j[0].size());
  if (cols == 0) fail(ErrorCode::ParseError, "matrix rows must be nonempty");
  IntMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    require_array(j[i], "matrix row");
    if (static_cast<int>(j[i].size()) != cols)
      fail(ErrorCode::ParseError, "ragged matrix rows");
    for (int k = 0; k < cols; ++k) m.at(i, k) = int_from_json(j[i][k]);
  }
  return m;
}

Json int_vec_to_json(const std::vector<Int>& v) {
  Json a = Json::array();
  for (const Int& x : v) a.push_back(int_to_json(x));
  return a;
}

std::vector<Int> int_vec_from_json(const Json& j) {
  require_array(j, "integer vector");
  std::vector<Int> v;
  v.reserve(j.size());
  for (const Json& e : j) v.push_back(int_from_json(e));
  return v;
}

Json field_to_json(const FieldPtr& f) {
  Json j;
  Json poly = Json::array();
  for (const Int& c : f->min_poly) poly.push_back(int_to_json(c));
  j["min_poly"] = std::move(poly);
  j["root_interval"] = Json::array({to_string(f->lo), to_string(f->hi)});
  return j;
}

FieldPtr field_from_json(const Json& j) {
  ZPoly p;
  const Json& poly = get_field(j, "min_poly");
  require_array(poly, "min_poly");
  for (const Json& c : poly) p.push_back(int_from_json(c));
  const Json& iv = get_field(j, "root_interval");
  require_array(iv, "root_interval");
  if (iv.size() != 2) fail(ErrorCode::ParseError, "root_interval must be [lo, hi]");
  return field_from_poly(p, rat_from_json(iv[0]), rat_from_json(iv[1]));
}

Json fe_to_json(const FieldElement& x) {
  Json a = Json::array();
  for (const Rat& c : x.c) a.push_back(to_string(c));
  return a;
}

FieldElement fe_from_json(const FieldPtr& f, const Json& j) {
  require_array(j, "field element");
  std::vector<Rat> c;
  c.reserve(j.size());
  for (const Json& e : j) c.push_back(rat_from_json(e));
  return fe_make(f, std::move(c));
}

Json fe_doc_to_json(const FieldElement& x) {
  Json j;
  j["field"] = field_to_json(x.field);
  j["value"] = fe_to_json(x);
  return j;
}

FieldElement fe_doc_from_json(const Json& j) {
  FieldPtr f = field_from_json(get_field(j, "field"));
  return fe_from_json(f, get_field(j, "value"));
}

Json group_element_to_json(const GroupElement& g) {
  Json j;
  j["level"] = Json(static_cast<std::int64_t>(g.level));
  j["vec"] = int_vec_to_json(g.vec);
  return j;
}

GroupElement group_element_from_json(const Json& j) {
  GroupElement g;
  g.level = long_from_json(get_field(j, "level"));
  g.vec = int_vec_from_json(get_field(j, "vec"));
  return g;
}

ParsedSystem parse_system(const Json& j, bool allow_sft) {
  std::string kind = get_string(get_field(j, "kind"), "kind");
  ParsedSystem out;
  if (kind == "substitution") {
    const Json& alpha = get_field(j, "alphabet");
    require_array(alpha, "alphabet");
    std::string alphabet;
    for (const Json& a : alpha) {
      std::string s = get_string(a, "alphabet entry");
      if (s.size() != 1) fail(ErrorCode::ParseError, "alphabet entries must be single characters");
      alphabet += s;
    }
    const Json& rules = get_field(j, "rules");
    if (!rules.is_object()) fail(ErrorCode::ParseError, "rules must be an object");
    std::map<char, std::string> map;
    for (auto it = rules.begin(); it != rules.end(); ++it) {
      if (it.key().size() != 1) fail(ErrorCode::ParseError, "rule keys must be single characters");
      map[it.key()[0]] = get_string(it.value(), "rule image");
    }
    out.base = make_substitution(alphabet, map);
  } else if (kind == "odometer") {
    const Json& base = get_field(j, "base");
    require_array(base, "base");
    std::vector<long> bases;
    for (const Json& b : base) bases.push_back(long_from_json(b));
    out.base = make_odometer(bases);
  } else if (kind == "point") {
    out.base = PointSystem{};
  } else if (kind == "sft") {
    if (!allow_sft)
      fail(ErrorCode::ParseError, "kind 'sft' is only accepted by the entropy commands");
    out.sft = Sft{matrix_from_json(get_field(j, "adjacency"))};
  } else {
    fail(ErrorCode::ParseError, "unknown system kind '" + kind + "'");
  }
  return out;
}

BaseSystem parse_base_system(const Json& j) {
  return *parse_system(j, false).base;
}

Json system_to_json(const BaseSystem& sys) {
  Json j;
  if (const auto* s = std::get_if<Substitution>(&sys)) {
    j["kind"] = "substitution";
    Json alpha = Json::array();
    for (char a : s->alphabet) alpha.push_back(std::string(1, a));
    j["alphabet"] = std::move(alpha);
    Json rules;
    for (const auto& [a, w] : s->rules) rules[std::string(1, a)] = w;
    j["rules"] = std::move(rules);
  } else if (const auto* o = std::get_if<Odometer>(&sys)) {
    j["kind"] = "odometer";
    Json base = Json::array();
    for (long b : o->bases) base.push_back(b);
    j["base"] = std::move(base);
  } else {
    j["kind"] = "point";
  }
  return j;
}

FieldElement parse_time_string(const std::string& s) {
  if (s.empty()) fail(ErrorCode::ParseError, "empty time parameter");
  if (s[0] == '{') return fe_doc_from_json(parse_json_text(s));
  if (s.rfind("sqrt", 0) == 0) {
    std::size_t pos = 4;
    std::size_t end = pos;
    while (end < s.size() && s[end] >= '0' && s[end] <= '9') ++end;
    if (end == pos) fail(ErrorCode::ParseError, "bad time parameter '" + s + "'");
    Int d = int_from_string(s.substr(pos, end - pos));
    Rat shift(0);
    if (end != s.size()) {
      std::string tail = s.substr(end);
      if (tail.rfind("_plus_", 0) == 0)
        shift = Rat(int_from_string(tail.substr(6)));
      else if (tail.rfind("_minus_", 0) == 0)
        shift = -Rat(int_from_string(tail.substr(7)));
      else
        fail(ErrorCode::ParseError, "bad time parameter '" + s + "'");
    }
    if (d < 2) fail(ErrorCode::ParseError, "sqrt argument must be at least 2");
    if (is_perfect_square(d)) return fe_rat(shift + Rat(int_sqrt(d)));
    ZPoly poly{-d, Int(0), Int(1)};  // x^2 - d
    auto iv = largest_real_root_interval(poly);
    if (!iv) fail(ErrorCode::Internal, "square root interval not found");
    FieldPtr f = field_from_poly(poly, iv->first, iv->second);
    return fe_make(f, {shift, Rat(1)});
  }
  return fe_rat(rat_from_string(s));
}

Json trace_range_to_json(const TraceRangeModule& m) {
  Json j;
  j["field"] = field_to_json(m.field);
  j["unit"] = fe_to_json(m.unit);
  Json gens = Json::array();
  for (const FieldElement& g : m.gens) gens.push_back(fe_to_json(g));
  j["gens"] = std::move(gens);
  return j;
}

TraceRangeModule trace_range_from_json(const Json& j) {
  if (j.is_object() && j.contains("trace_range")) return trace_range_from_json(j["trace_range"]);
  TraceRangeModule m;
  m.field = field_from_json(get_field(j, "field"));
  m.unit = fe_from_json(m.field, get_field(j, "unit"));
  const Json& gens = get_field(j, "gens");
  require_array(gens, "gens");
  for (const Json& g : gens) m.gens.push_back(fe_from_json(m.field, g));
  return m;
}

Json invariant_to_json(const ElliottInvariant& inv) {
  Json j;
  Json k0;
  k0["summands"] = Json::array({"Z", "dimension_group"});
  Json diagram;
  diagram["incidence"] = matrix_to_json(inv.group.diagram.incidence);
  diagram["unit_vector"] = int_vec_to_json(inv.group.diagram.unit_vec);
  k0["diagram"] = std::move(diagram);
  InvElement u = inv_order_unit(inv);
  k0["order_unit"] = Json::array({int_to_json(u.n), group_element_to_json(u.z)});
  j["k0"] = std::move(k0);
  j["k1"] = k1_descriptor();
  j["field"] = field_to_json(inv.field);
  j["t"] = fe_to_json(inv.t);
  j["unimodular"] = inv.unimodular;
  j["trace_range"] = trace_range_to_json(trace_range(inv));
  j["assumptions"] =
      Json::array({"time-t map assumed minimal (irrational t; bad set countable)"});
  return j;
}

ElliottInvariant invariant_from_json(const Json& j) {
  const Json& k0 = get_field(j, "k0");
  const Json& diagram = get_field(k0, "diagram");
  StationaryBVDiagram d = make_diagram(matrix_from_json(get_field(diagram, "incidence")),
                                       int_vec_from_json(get_field(diagram, "unit_vector")));
  FieldPtr f = field_from_json(get_field(j, "field"));
  FieldElement t = fe_from_json(f, get_field(j, "t"));
  return suspension_invariant(d, t);
}

Json certificate_to_json(const IsoCertificate& c) {
  Json j;
  j["block"] = matrix_to_json(c.block);
  j["source_level_offset"] = Json(static_cast<std::int64_t>(c.source_level_offset));
  j["target_level_offset"] = Json(static_cast<std::int64_t>(c.target_level_offset));
  if (c.mixing_column) j["mixing_column"] = int_vec_to_json(*c.mixing_column);
  j["z_block"] = int_to_json(c.z_block);
  j["assumes_measure_equality"] = c.assumes_measure_equality;
  return j;
}

IsoCertificate certificate_from_json(const Json& j) {
  IsoCertificate c;
  c.block = matrix_from_json(get_field(j, "block"));
  if (j.contains("source_level_offset")) c.source_level_offset = long_from_json(j["source_level_offset"]);
  if (j.contains("target_level_offset")) c.target_level_offset = long_from_json(j["target_level_offset"]);
  if (j.contains("mixing_column") && !j["mixing_column"].is_null())
    c.mixing_column = int_vec_from_json(j["mixing_column"]);
  if (j.contains("z_block")) c.z_block = int_from_json(j["z_block"]);
  if (j.contains("assumes_measure_equality")) {
    const Json& b = j["assumes_measure_equality"];
    if (!b.is_boolean()) fail(ErrorCode::ParseError, "assumes_measure_equality must be a boolean");
    c.assumes_measure_equality = b.get<bool>();
  }
  return c;
}

Json comparison_report_to_json(const ComparisonReport& r) {
  Json j;
  j["verdict"] = verdict_name(r.verdict);
  Json conds = Json::array();
  for (const Condition& c : r.conditions) {
    Json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    conds.push_back(std::move(e));
  }
  j["conditions"] = std::move(conds);
  j["assumptions"] = r.assumptions;
  return j;
}

Json entropy_value_to_json(const ExactEntropy& e) {
  Json exact;
  if (e.zero) {
    exact["coefficient"] = "0";
  } else {
    exact["coefficient"] = to_string(e.coefficient);
    if (fe_is_rational(*e.base))
      exact["log_base"] = to_string(fe_to_rational(*e.base));
    else
      exact["log_base"] = fe_doc_to_json(*e.base);
    if (e.scale) exact["scale"] = fe_doc_to_json(*e.scale);
  }
  Json j;
  j["exact"] = std::move(exact);
  j["approx"] = entropy_to_double(e);
  return j;
}

Json estimate_report_to_json(const EstimateReport& r) {
  Json j;
  j["estimate"] = r.estimate;
  j["n"] = Json(static_cast<std::int64_t>(r.n));
  j["t"] = to_string(r.t);
  j["eps"] = to_string(r.eps);
  Json counts;
  counts["full"] = to_string(r.count_full);
  counts["half"] = to_string(r.count_half);
  j["counts"] = std::move(counts);
  j["fibers"] = Json(static_cast<std::int64_t>(r.fibers));
  if (r.audited) {
    Json audit;
    audit["candidates"] = Json(static_cast<std::int64_t>(r.candidates));
    audit["separated"] = r.separated;
    audit["min_distance"] = to_string(r.min_distance);
    j["audit"] = std::move(audit);
  }
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace suspk
