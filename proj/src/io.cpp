#include "hyperdraw/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace hyperdraw {

namespace {

[[noreturn]] void schema(const std::string& field, const std::string& msg) {
  throw Error(ErrorKind::Schema, "field '" + field + "': " + msg);
}

const Json& require(const Json& j, const std::string& key) {
  if (!j.is_object()) schema(key, "enclosing value is not an object");
  const auto it = j.find(key);
  if (it == j.end()) schema(key, "missing");
  return *it;
}

int as_int(const Json& v, const std::string& field) {
  if (!v.is_number_integer()) schema(field, "expected an integer");
  const auto x = v.get<long long>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) schema(field, "out of range");
  return int(x);
}

double as_number(const Json& v, const std::string& field) {
  if (!v.is_number()) schema(field, "expected a number");
  return v.get<double>();
}

std::string as_string(const Json& v, const std::string& field) {
  if (!v.is_string()) schema(field, "expected a string");
  return v.get<std::string>();
}

const Json& as_array(const Json& v, const std::string& field) {
  if (!v.is_array()) schema(field, "expected an array");
  return v;
}

std::pair<double, double> as_pair(const Json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2) schema(field, "expected a pair of numbers");
  return {as_number(v[0], field + "[0]"), as_number(v[1], field + "[1]")};
}

Graph read_graph(const Json& j) {
  const int n = as_int(require(j, "n"), "n");
  if (n < 0) schema("n", "must be nonnegative");
  std::vector<Edge> edges;
  const Json& ej = as_array(require(j, "edges"), "edges");
  for (std::size_t i = 0; i < ej.size(); ++i) {
    const std::string f = "edges[" + std::to_string(i) + "]";
    if (!ej[i].is_array() || ej[i].size() != 2) schema(f, "expected a pair of vertex indices");
    edges.emplace_back(as_int(ej[i][0], f + "[0]"), as_int(ej[i][1], f + "[1]"));
  }
  try {
    return Graph::from_edges(n, std::move(edges));
  } catch (const Error& e) {
    schema("edges", e.what());
  }
}

Json edges_json(const Graph& g) {
  Json out = Json::array();
  for (const auto& [a, b] : g.edges) out.push_back({a, b});
  return out;
}

Json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + std::ptrdiff_t(upto), '\n');
    throw Error(ErrorKind::Schema, source + ":" + std::to_string(line) + ": malformed JSON");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Usage, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json graph_to_json(const GeneratedGraph& g) {
  Json out;
  out["n"] = g.graph.n;
  out["edges"] = edges_json(g.graph);
  if (g.layout) {
    Json c = Json::array();
    for (const auto& p : g.layout->coords) c.push_back({p.x(), p.y()});
    out["coords"] = c;
  }
  if (g.construction) out["order"] = g.construction->order();
  return out;
}

GeneratedGraph graph_from_json(const Json& j) {
  GeneratedGraph out{read_graph(j), std::nullopt, std::nullopt};
  if (j.contains("coords")) {
    const Json& cj = as_array(j["coords"], "coords");
    if (int(cj.size()) != out.graph.n) schema("coords", "expected one coordinate pair per vertex");
    EuclideanLayout e{out.graph, {}};
    for (std::size_t i = 0; i < cj.size(); ++i) {
      const auto [x, y] = as_pair(cj[i], "coords[" + std::to_string(i) + "]");
      e.coords.emplace_back(x, y);
    }
    out.layout = std::move(e);
  }
  if (j.contains("order")) {
    const Json& oj = as_array(j["order"], "order");
    std::vector<int> order;
    for (std::size_t i = 0; i < oj.size(); ++i) order.push_back(as_int(oj[i], "order[" + std::to_string(i) + "]"));
    out.construction = replay_construction(out.graph, order);
  }
  return out;
}

Json drawing_to_json(const Drawing& d) {
  Json out;
  out["model"] = "uhp";
  out["n"] = d.graph.n;
  out["edges"] = edges_json(d.graph);
  Json pos = Json::array();
  for (const auto& p : d.pos) pos.push_back({p.x, p.y});
  out["pos"] = pos;
  Json params = Json::object();
  for (const auto& [k, v] : d.meta.params) params[k] = v;
  out["meta"] = {{"construction", d.meta.construction}, {"params", params}};
  return out;
}

Drawing drawing_from_json(const Json& j) {
  if (as_string(require(j, "model"), "model") != "uhp") schema("model", "only \"uhp\" drawings are supported");
  Drawing d;
  d.graph = read_graph(j);
  const Json& pj = as_array(require(j, "pos"), "pos");
  if (int(pj.size()) != d.graph.n) schema("pos", "expected one position per vertex");
  for (std::size_t i = 0; i < pj.size(); ++i) {
    const std::string f = "pos[" + std::to_string(i) + "]";
    const auto [x, y] = as_pair(pj[i], f);
    try {
      d.pos.emplace_back(x, y);
    } catch (const Error& e) {
      schema(f, e.what());
    }
  }
  if (j.contains("meta")) {
    const Json& m = j["meta"];
    if (!m.is_object()) schema("meta", "expected an object");
    if (m.contains("construction")) d.meta.construction = as_string(m["construction"], "meta.construction");
    if (m.contains("params")) {
      if (!m["params"].is_object()) schema("meta.params", "expected an object");
      for (const auto& [k, v] : m["params"].items()) d.meta.params[k] = as_number(v, "meta.params." + k);
    }
  }
  return d;
}

Json metrics_to_json(const Drawing& d, const MetricsReport& r) {
  Json out;
  out["n"] = d.graph.n;
  Json w = Json::object();
  if (r.vv) {
    out["vv"] = r.vv->value;
    w["vv"] = {{"u", r.vv->u}, {"v", r.vv->v}};
  }
  if (r.ve) {
    out["ve"] = r.ve->value;
    w["ve"] = {{"vertex", r.ve->vertex}, {"edge", {r.ve->edge.first, r.ve->edge.second}}};
  }
  if (r.angular) {
    out["angular"] = r.angular->value;
    w["angular"] = {{"vertex", r.angular->vertex}, {"neighbors", {r.angular->a, r.angular->b}}};
  }
  if (r.min_face_area) {
    out["min_face_area"] = r.min_face_area->value;
    w["min_face_area"] = {{"face", r.min_face_area->face}, {"bounded_faces", r.min_face_area->bounded_faces}};
  }
  if (r.planar) {
    out["planar"] = r.planar->planar;
    if (r.planar->crossing) {
      const auto& [e, f] = *r.planar->crossing;
      w["planar"] = {{"crossing", {{e.first, e.second}, {f.first, f.second}}}};
    }
  }
  out["witnesses"] = w;
  return out;
}

std::string metrics_csv(const Drawing& d, const MetricsReport& r) {
  auto cell = [](const auto& opt) { return opt ? format_double(opt->value) : std::string(); };
  return "n,vv,ve,angular,min_face_area\n" + std::to_string(d.graph.n) + "," + cell(r.vv) + "," + cell(r.ve) + "," +
         cell(r.angular) + "," + cell(r.min_face_area) + "\n";
}

Json scaling_to_json(const ScalingResult& r) {
  const auto& c = r.config;
  Json out;
  out["name"] = c.name;
  out["family"] = c.family;
  out["layout"] = c.layout;
  out["params"] = {{"d", c.d}, {"diameter", c.diameter}, {"side", c.side}};
  out["metrics"] = c.metrics;
  out["fit"] = {{"kind", c.fit == FitKind::LogLog ? "loglog" : "semilog"},
                {"slope", r.fit.slope},
                {"intercept", r.fit.intercept},
                {"r2", r.fit.r2}};
  out["expected"] = {{"lo", number(c.expected.lo)}, {"hi", number(c.expected.hi)}, {"min_r2", c.min_r2}};
  out["seed"] = c.seed;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json values = Json::object();
    for (const auto& [k, v] : row.values) values[k] = v;
    rows.push_back({{"param", row.param}, {"n", row.n}, {"values", values}});
  }
  out["rows"] = rows;
  out["pass"] = r.pass;
  return out;
}

Json preset_to_json(const PresetResult& r) {
  Json out;
  out["name"] = r.name;
  Json sweeps = Json::array();
  for (const auto& s : r.sweeps) sweeps.push_back(scaling_to_json(s));
  out["sweeps"] = sweeps;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  out["checks"] = checks;
  out["pass"] = r.pass();
  return out;
}

void write_csv_rows(std::ostream& os, const ScalingResult& r) {
  for (const auto& row : r.rows)
    for (const auto& m : r.config.metrics)
      os << r.config.family << ',' << r.config.layout << ',' << row.n << ',' << m << ','
         << format_double(row.values.at(m)) << '\n';
}

ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig c;
  if (!j.is_object()) schema("<root>", "expected an object");
  if (j.contains("name")) c.name = as_string(j["name"], "name");
  c.family = as_string(require(j, "family"), "family");
  c.layout = as_string(require(j, "layout"), "layout");
  const Json& pj = require(j, "params");
  if (pj.is_object()) {
    const int from = as_int(require(pj, "from"), "params.from");
    const int to = as_int(require(pj, "to"), "params.to");
    for (int i = from; i <= to; ++i) c.params.push_back(i);
  } else {
    as_array(pj, "params");
    for (std::size_t i = 0; i < pj.size(); ++i) c.params.push_back(as_int(pj[i], "params[" + std::to_string(i) + "]"));
  }
  if (j.contains("d")) c.d = as_number(j["d"], "d");
  if (j.contains("diameter")) c.diameter = as_number(j["diameter"], "diameter");
  if (j.contains("side")) c.side = as_number(j["side"], "side");
  const Json& mj = as_array(require(j, "metrics"), "metrics");
  for (std::size_t i = 0; i < mj.size(); ++i) c.metrics.push_back(as_string(mj[i], "metrics[" + std::to_string(i) + "]"));
  const std::string fit = as_string(require(j, "fit"), "fit");
  if (fit == "loglog") c.fit = FitKind::LogLog;
  else if (fit == "semilog") c.fit = FitKind::SemiLog;
  else schema("fit", "expected \"loglog\" or \"semilog\"");

  const std::string bound = j.contains("bound") ? as_string(j["bound"], "bound") : "within";
  const double inf = std::numeric_limits<double>::infinity();
  if (bound == "negative") {
    c.expected = {-inf, -std::numeric_limits<double>::min()};
  } else {
    const double expected = as_number(require(j, "expected"), "expected");
    const double tol = as_number(require(j, "tolerance"), "tolerance");
    if (!(tol > 0.0)) schema("tolerance", "must be positive");
    if (bound == "within") c.expected = {expected - tol, expected + tol};
    else if (bound == "at_most") c.expected = {-inf, expected + tol};
    else schema("bound", "expected \"within\", \"at_most\" or \"negative\"");
  }
  if (j.contains("min_r2")) c.min_r2 = as_number(j["min_r2"], "min_r2");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) schema("seed", "expected a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (c.name.empty()) c.name = c.family + "/" + c.layout;
  try {
    c.validate();
  } catch (const Error& e) {
    schema("<config>", e.what());
  }
  return c;
}

}  // namespace hyperdraw
