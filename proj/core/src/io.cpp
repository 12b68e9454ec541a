#include "carnot/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

namespace carnot::io {

using json = nlohmann::ordered_json;

namespace {

double parse_double(const std::string& tok) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + tok + "'");
  }
  while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
  if (pos != tok.size()) throw ParseError("not a number: '" + tok + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

json num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

double from_num(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw ParseError("bad number '" + s + "'");
  }
  return j.get<double>();
}

json spec_json(const GroupSpec& spec) {
  return {{"kernel_dim", spec.kernel_dim()}, {"alphas", spec.alphas()}};
}

}  // namespace

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

GroupSpec parse_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kernel_dim") || !j.contains("alphas"))
    throw ParseError("spec needs fields 'kernel_dim' and 'alphas'");
  try {
    return make_spec(j.at("kernel_dim").get<int>(), j.at("alphas").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed spec: ") + e.what());
  }
}

GroupSpec read_spec_file(const std::string& path) { return parse_spec(read_file(path)); }

std::string spec_to_json(const GroupSpec& spec) { return spec_json(spec).dump(); }

std::vector<std::string> csv_header(const GroupSpec& spec) {
  std::vector<std::string> h;
  for (int i = 1; i <= spec.kernel_dim(); ++i) h.push_back("x0_" + std::to_string(i));
  for (int i = 1; i <= spec.d(); ++i) {
    h.push_back("b" + std::to_string(i) + "_1");
    h.push_back("b" + std::to_string(i) + "_2");
  }
  h.emplace_back("z");
  return h;
}

void write_points_csv(std::ostream& os, const GroupSpec& spec, const std::vector<Point>& pts,
                      const std::vector<double>* weights) {
  const auto h = csv_header(spec);
  for (std::size_t i = 0; i < h.size(); ++i) os << (i ? "," : "") << h[i];
  if (weights) os << ",w";
  os << '\n';
  for (std::size_t r = 0; r < pts.size(); ++r) {
    check_layout(spec, pts[r]);
    for (int i = 0; i < spec.dim(); ++i) os << (i ? "," : "") << fmt(pts[r][i]);
    if (weights) os << ',' << fmt((*weights)[r]);
    os << '\n';
  }
}

void write_measure_csv(std::ostream& os, const GroupSpec& spec, const DiscreteMeasure& mu) {
  write_points_csv(os, spec, mu.points, &mu.weights);
}

DiscreteMeasure read_measure_csv(std::istream& is, const GroupSpec& spec) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty CSV");
  std::vector<std::string> cols = split(trim(line), ',');
  for (auto& c : cols) c = trim(c);
  const auto expect = csv_header(spec);
  bool has_w = false;
  if (cols.size() == expect.size() + 1 && cols.back() == "w") {
    has_w = true;
    cols.pop_back();
  }
  if (cols != expect) {
    std::string want;
    for (const auto& e : expect) want += (want.empty() ? "" : ",") + e;
    throw LayoutError("CSV header does not match the group layout; expected " + want);
  }
  DiscreteMeasure mu;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    const auto toks = split(line, ',');
    if (toks.size() != expect.size() + (has_w ? 1 : 0))
      throw ParseError("CSV line " + std::to_string(lineno) + " has " + std::to_string(toks.size()) +
                       " fields");
    Point p(spec.dim());
    for (int i = 0; i < spec.dim(); ++i) p[i] = parse_double(trim(toks[static_cast<std::size_t>(i)]));
    check_layout(spec, p);
    mu.points.push_back(p);
    mu.weights.push_back(has_w ? parse_double(trim(toks.back())) : 0.0);
  }
  if (mu.points.empty()) throw ParseError("CSV has no data rows");
  if (!has_w) mu.weights.assign(mu.points.size(), 1.0 / static_cast<double>(mu.points.size()));
  return mu;
}

DiscreteMeasure read_measure_file(const std::string& path, const GroupSpec& spec) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  return read_measure_csv(f, spec);
}

std::string plan_to_json(const GroupSpec& spec, const TransportPlan& plan) {
  json pairs = json::array();
  for (const TransportPair& p : plan.pairs) {
    pairs.push_back({{"i", p.i},
                     {"j", p.j},
                     {"mass", p.mass},
                     {"theta", p.theta.to_vector()},
                     {"cls", to_string(p.cls)},
                     {"moving", p.moving}});
  }
  json j{{"spec", spec_json(spec)},
         {"pairs", pairs},
         {"cost", plan.cost},
         {"duals", {{"phi", plan.phi}, {"phic", plan.phic}}}};
  return j.dump(1);
}

TransportPlan plan_from_json(const std::string& text, const GroupSpec& spec) {
  TransportPlan plan;
  try {
    const json j = json::parse(text);
    for (const json& p : j.at("pairs")) {
      TransportPair tp;
      tp.i = p.at("i").get<int>();
      tp.j = p.at("j").get<int>();
      tp.mass = p.at("mass").get<double>();
      tp.theta = make_covector(spec, p.at("theta").get<std::vector<double>>());
      tp.cls = parse_cut_class(p.at("cls").get<std::string>());
      tp.moving = p.at("moving").get<bool>();
      plan.pairs.push_back(tp);
    }
    plan.cost = j.at("cost").get<double>();
    plan.phi = j.at("duals").at("phi").get<std::vector<double>>();
    plan.phic = j.at("duals").at("phic").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed plan document: ") + e.what());
  }
  return plan;
}

namespace {
json report_json(const VerifyReport& r) {
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = num(v);
  json metrics = json::array();
  for (const Metric& m : r.metrics)
    metrics.push_back({{"name", m.name},
                       {"value", num(m.value)},
                       {"relation", m.relation},
                       {"bound", num(m.bound)},
                       {"pass", m.pass},
                       {"required", m.required}});
  return {{"check", r.check},   {"spec", spec_json(r.spec)}, {"seed", r.seed},
          {"params", params},   {"lhs", num(r.lhs)},         {"rhs", num(r.rhs)},
          {"tolerance", num(r.tolerance)}, {"pass", r.pass}, {"runtime", r.runtime},
          {"metrics", metrics}};
}
}  // namespace

std::string report_to_json(const VerifyReport& r) { return report_json(r).dump(1); }

std::string reports_to_json(const std::vector<VerifyReport>& rs) {
  json arr = json::array();
  bool all = true;
  for (const VerifyReport& r : rs) {
    arr.push_back(report_json(r));
    all &= r.pass;
  }
  return json{{"pass", all}, {"reports", arr}}.dump(1);
}

VerifyReport report_from_json(const std::string& text) {
  VerifyReport r;
  try {
    const json j = json::parse(text);
    r.check = j.at("check").get<std::string>();
    r.spec = make_spec(j.at("spec").at("kernel_dim").get<int>(),
                       j.at("spec").at("alphas").get<std::vector<double>>());
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& [k, v] : j.at("params").items()) r.params.emplace_back(k, from_num(v));
    r.lhs = from_num(j.at("lhs"));
    r.rhs = from_num(j.at("rhs"));
    r.tolerance = from_num(j.at("tolerance"));
    r.pass = j.at("pass").get<bool>();
    r.runtime = j.at("runtime").get<double>();
    for (const json& m : j.at("metrics")) {
      Metric mt;
      mt.name = m.at("name").get<std::string>();
      mt.value = from_num(m.at("value"));
      mt.relation = m.at("relation").get<std::string>();
      mt.bound = from_num(m.at("bound"));
      mt.pass = m.at("pass").get<bool>();
      mt.required = m.at("required").get<bool>();
      r.metrics.push_back(mt);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
  return r;
}

Coords parse_blocks(const std::string& text, const GroupSpec& spec) {
  const auto fields = split(trim(text), ';');
  const std::size_t want = static_cast<std::size_t>((spec.kernel_dim() > 0 ? 1 : 0) + spec.d() + 1);
  if (fields.size() != want)
    throw LayoutError("expected " + std::to_string(want) + " ';'-separated fields, got " +
                      std::to_string(fields.size()));
  Coords out(spec.dim());
  int pos = 0;
  std::size_t f = 0;
  auto take = [&](std::size_t count, const char* what) {
    const auto toks = split(fields[f++], ',');
    if (toks.size() != count)
      throw LayoutError(std::string(what) + " needs " + std::to_string(count) + " entries");
    for (const auto& t : toks) out[pos++] = parse_double(trim(t));
  };
  if (spec.kernel_dim() > 0) take(static_cast<std::size_t>(spec.kernel_dim()), "kernel block");
  for (int i = 0; i < spec.d(); ++i) take(2, "2-block");
  take(1, "vertical field");
  check_layout(spec, out);
  return out;
}

std::string format_blocks(const Coords& v, const GroupSpec& spec) {
  std::string s;
  int pos = 0;
  if (spec.kernel_dim() > 0) {
    for (int i = 0; i < spec.kernel_dim(); ++i) s += (i ? "," : "") + fmt(v[pos++]);
    s += ";";
  }
  for (int i = 0; i < spec.d(); ++i) {
    s += fmt(v[pos]) + "," + fmt(v[pos + 1]) + ";";
    pos += 2;
  }
  return s + fmt(v[pos]);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << content;
}

}  // namespace carnot::io
