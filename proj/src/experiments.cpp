#include "hyperdraw/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include <Eigen/Dense>

namespace hyperdraw {

namespace {

Fit least_squares(const std::vector<double>& x, const std::vector<double>& ly) {
  const Eigen::Index m = Eigen::Index(x.size());
  Eigen::MatrixXd a(m, 2);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    a(i, 0) = x[i];
    a(i, 1) = 1.0;
    b(i) = ly[i];
  }
  const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(b);
  const Eigen::VectorXd resid = b - a * coef;
  const double ss_res = resid.squaredNorm();
  const double ss_tot = (b.array() - b.mean()).matrix().squaredNorm();
  Fit f{coef(0), coef(1), 1.0};
  if (ss_tot > 0.0) f.r2 = 1.0 - ss_res / ss_tot;
  return f;
}

void check_rows(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::Domain, "fit needs equally many x and y values");
  if (x.size() < 3) throw Error(ErrorKind::Domain, "fit needs at least 3 rows");
  for (double v : y)
    if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorKind::Domain, "cannot take the log of a nonpositive metric value");
}

std::vector<double> logs(const std::vector<double>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (double t : v) out.push_back(std::log(t));
  return out;
}

// Runs f(0..count-1) on up to `jobs` threads. The first failing index (lowest)
// is rethrown so errors do not depend on scheduling.
template <class F>
void parallel_for(int count, int jobs, F f) {
  jobs = std::clamp(jobs, 1, std::max(count, 1));
  std::vector<std::exception_ptr> errors(count);
  auto run = [&](int i) {
    try {
      f(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) run(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (int i = next++; i < count; i = next++) run(i);
      });
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

const std::vector<std::string> kFamilies = {"nested-triangles", "triangulated-grid", "grid", "serpar", "complete"};
const std::vector<std::string> kLayouts = {"klein", "canonical", "polygon", "euclidean-polygon"};
const std::vector<std::string> kMetrics = {"vv", "ve", "angular", "planar", "min_face_area"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

GeneratedGraph generate(const std::string& family, int param) {
  if (family == "nested-triangles") return nested_triangles(param);
  if (family == "triangulated-grid") return triangulated_grid_with_frame(param);
  if (family == "grid") return grid(param);
  if (family == "serpar") return complete_tripartite_two_apex(param);
  if (family == "complete") return {complete(param), std::nullopt, std::nullopt};
  throw Error(ErrorKind::Domain, "unknown family '" + family + "'");
}

double face_bound(int n) { return std::numbers::pi / (2.0 * n - 3.0); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

Fit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  check_rows(x, y);
  for (double v : x)
    if (!(v > 0.0)) throw Error(ErrorKind::Domain, "cannot take the log of a nonpositive parameter");
  return least_squares(logs(x), logs(y));
}

Fit fit_semilog(const std::vector<double>& x, const std::vector<double>& y) {
  check_rows(x, y);
  return least_squares(x, logs(y));
}

void ExperimentConfig::validate() const {
  if (params.empty()) throw Error(ErrorKind::Domain, "experiment parameter range is empty");
  if (!contains(kFamilies, family)) throw Error(ErrorKind::Domain, "unknown family '" + family + "'");
  if (!contains(kLayouts, layout)) throw Error(ErrorKind::Domain, "unknown layout '" + layout + "'");
  if (metrics.empty()) throw Error(ErrorKind::Domain, "experiment needs at least one metric");
  for (const auto& m : metrics)
    if (!contains(kMetrics, m)) throw Error(ErrorKind::Domain, "unknown metric '" + m + "'");
  if (!(expected.lo <= expected.hi)) throw Error(ErrorKind::Domain, "expected slope band is empty");
  if (layout == "euclidean-polygon" && (family != "complete" || metrics != std::vector<std::string>{"angular"}))
    throw Error(ErrorKind::Domain, "euclidean-polygon supports only complete/angular");
  if (jobs < 1) throw Error(ErrorKind::Domain, "jobs must be positive");
}

void evaluate(ScalingResult& r) {
  const std::string& metric = r.config.metrics.front();
  std::vector<double> x, y;
  for (const auto& row : r.rows) {
    x.push_back(row.n);
    y.push_back(row.values.at(metric));
  }
  r.fit = r.config.fit == FitKind::LogLog ? fit_loglog(x, y) : fit_semilog(x, y);
  r.pass = r.config.expected.contains(r.fit.slope) && r.fit.r2 >= r.config.min_r2;
}

Drawing sweep_drawing(const ExperimentConfig& cfg, int param) {
  if (cfg.layout == "polygon") {
    if (cfg.family != "complete") throw Error(ErrorKind::Domain, "polygon layout needs the complete family");
    return regular_polygon_layout(param, cfg.side);
  }
  if (cfg.layout == "canonical" && cfg.family == "grid") {
    const GeneratedGraph tri = triangulated_grid_with_frame(param);
    return uhp_canonical_layout(*tri.construction, cfg.d).with_edges(grid(param).graph.edges);
  }
  const GeneratedGraph g = generate(cfg.family, param);
  if (cfg.layout == "klein") {
    if (!g.layout) throw Error(ErrorKind::Domain, cfg.family + " has no Euclidean reference layout");
    return klein_scaled_layout(*g.layout, cfg.diameter);
  }
  if (cfg.layout == "canonical") {
    if (!g.construction) throw Error(ErrorKind::Domain, cfg.family + " has no canonical ordering");
    return uhp_canonical_layout(*g.construction, cfg.d);
  }
  throw Error(ErrorKind::Domain, "layout '" + cfg.layout + "' does not produce a hyperbolic drawing");
}

ScalingResult run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  ScalingResult out;
  out.config = cfg;
  out.rows.resize(cfg.params.size());
  parallel_for(int(cfg.params.size()), cfg.jobs, [&](int i) {
    const int param = cfg.params[i];
    SweepRow& row = out.rows[i];
    row.param = param;
    try {
      if (cfg.layout == "euclidean-polygon") {
        row.n = param;
        row.values["angular"] = euclidean_angular_resolution(euclidean_polygon(param));
        return;
      }
      const Drawing d = sweep_drawing(cfg, param);
      row.n = d.graph.n;
      for (const auto& m : cfg.metrics) {
        if (m == "vv") row.values[m] = vv_resolution(d).value;
        else if (m == "ve") row.values[m] = ve_resolution(d).value;
        else if (m == "angular") row.values[m] = angular_resolution(d).value;
        else if (m == "planar") row.values[m] = is_planar_drawing(d).planar ? 1.0 : 0.0;
        else if (m == "min_face_area") row.values[m] = min_face_area(d).value;
      }
    } catch (const Error& e) {
      throw Error(e.kind(), cfg.family + " at parameter " + std::to_string(param) + ": " + e.what());
    }
  });
  evaluate(out);
  return out;
}

double bold_threshold(int n, const BoldSweepParams& p) {
  const Drawing d = regular_polygon_layout(n, p.side);
  double lo = 0.0, hi = p.vertex_radius;
  for (int i = 0; i < p.steps; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (any_edge_fully_covered(d, BoldParams{p.vertex_radius, mid, p.samples_per_unit}))
      hi = mid;
    else
      lo = mid;
  }
  return lo;
}

ScalingResult bold_threshold_sweep(const std::vector<int>& ns, const BoldSweepParams& p, int jobs) {
  if (ns.size() < 3) throw Error(ErrorKind::Domain, "threshold sweep needs at least 3 sizes");
  ScalingResult out;
  out.config.name = "bold-threshold";
  out.config.family = "complete";
  out.config.layout = "polygon";
  out.config.side = p.side;
  out.config.params = ns;
  out.config.metrics = {"bold_threshold"};
  out.config.expected = {-1.3, -0.7};
  out.config.jobs = jobs;
  out.rows.resize(ns.size());
  parallel_for(int(ns.size()), jobs, [&](int i) {
    out.rows[i] = {ns[i], ns[i], {{"bold_threshold", bold_threshold(ns[i], p)}}};
  });
  evaluate(out);
  return out;
}

EuclideanLayout euclidean_polygon(int n) {
  EuclideanLayout e{complete(n), {}};
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * std::numbers::pi * j / n;
    e.coords.emplace_back(std::cos(t), std::sin(t));
  }
  return e;
}

double euclidean_angular_resolution(const EuclideanLayout& e) {
  const auto adj = e.graph.adjacency();
  double best = std::numeric_limits<double>::infinity();
  for (int v = 0; v < e.graph.n; ++v) {
    if (adj[v].size() < 2) continue;
    std::vector<double> dirs;
    for (int u : adj[v]) {
      const Eigen::Vector2d t = e.coords[u] - e.coords[v];
      dirs.push_back(std::atan2(t.y(), t.x()));
    }
    std::sort(dirs.begin(), dirs.end());
    for (std::size_t i = 0; i + 1 < dirs.size(); ++i) best = std::min(best, dirs[i + 1] - dirs[i]);
    best = std::min(best, 2.0 * std::numbers::pi - (dirs.back() - dirs.front()));
  }
  if (!std::isfinite(best)) throw Error(ErrorKind::Domain, "no vertex has two incident edges");
  return best;
}

bool PresetResult::pass() const {
  for (const auto& s : sweeps)
    if (!s.pass) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

void add_row_checks(PresetResult& out, const ScalingResult& s) {
  const auto& cfg = s.config;
  const std::string tag = cfg.name;
  auto has = [&](const char* m) { return contains(cfg.metrics, m); };
  if (has("min_face_area")) {
    Check c{tag + " face-area bound", true, ""};
    for (const auto& r : s.rows)
      if (!(r.values.at("min_face_area") <= face_bound(r.n) + 1e-9)) {
        c.pass = false;
        c.detail = "n=" + std::to_string(r.n) + " area " + fmt(r.values.at("min_face_area"));
      }
    out.checks.push_back(c);
  }
  if (has("vv") && cfg.layout == "canonical") {
    Check c{tag + " separation >= d", true, ""};
    for (const auto& r : s.rows)
      if (!(r.values.at("vv") >= cfg.d)) {
        c.pass = false;
        c.detail = "n=" + std::to_string(r.n) + " vv " + fmt(r.values.at("vv"));
      }
    out.checks.push_back(c);
  }
  if (has("planar")) {
    Check c{tag + " crossing-free", true, ""};
    for (const auto& r : s.rows)
      if (r.values.at("planar") != 1.0) {
        c.pass = false;
        c.detail = "n=" + std::to_string(r.n);
      }
    out.checks.push_back(c);
  }
}

ExperimentConfig base(const std::string& name, const std::string& family, const std::string& layout,
                      std::vector<int> params, std::vector<std::string> metrics, FitKind fit, SlopeBound b) {
  ExperimentConfig c;
  c.name = name;
  c.family = family;
  c.layout = layout;
  c.params = std::move(params);
  c.metrics = std::move(metrics);
  c.fit = fit;
  c.expected = b;
  return c;
}

const SlopeBound kNegative{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::min()};

}  // namespace

PresetResult run_config(const ExperimentConfig& cfg) {
  PresetResult out;
  out.name = cfg.name;
  out.sweeps.push_back(run_sweep(cfg));
  add_row_checks(out, out.sweeps.back());
  return out;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"thm1-grid",  "thm2-nested",       "thm4-angular", "thm5-serpar",
                                                 "thm6-grid-angular", "thm7-kn-angles", "thm8-bold"};
  return names;
}

PresetResult run_preset(const std::string& name, int jobs) {
  PresetResult out;
  out.name = name;
  auto add = [&](ExperimentConfig c) {
    c.jobs = jobs;
    out.sweeps.push_back(run_sweep(c));
    add_row_checks(out, out.sweeps.back());
  };

  if (name == "thm1-grid") {
    add(base(name, "triangulated-grid", "klein", {5, 10, 20, 40}, {"ve", "min_face_area"}, FitKind::LogLog,
             {-0.65, -0.35}));
  } else if (name == "thm2-nested") {
    add(base(name, "nested-triangles", "klein", range(4, 32), {"ve", "min_face_area"}, FitKind::LogLog, {-1.2, -0.8}));
  } else if (name == "thm4-angular") {
    for (double d : {1.0, 2.0, 4.0}) {
      auto c = base(name + " d=" + fmt(d), "nested-triangles", "canonical", range(3, 12),
                    {"angular", "vv", "planar", "min_face_area"}, FitKind::SemiLog, kNegative);
      c.d = d;
      add(c);
    }
    Check c{name + " rate magnitude grows with d", true, ""};
    for (std::size_t i = 0; i + 1 < out.sweeps.size(); ++i)
      if (!(std::abs(out.sweeps[i + 1].fit.slope) > std::abs(out.sweeps[i].fit.slope))) c.pass = false;
    for (const auto& s : out.sweeps) c.detail += (c.detail.empty() ? "" : " ") + fmt(s.fit.slope);
    out.checks.push_back(c);
  } else if (name == "thm5-serpar") {
    add(base(name, "serpar", "klein", range(8, 128), {"ve"}, FitKind::LogLog,
             {-std::numeric_limits<double>::infinity(), -0.4}));
  } else if (name == "thm6-grid-angular") {
    add(base(name, "grid", "canonical", range(3, 8), {"angular", "vv", "planar"}, FitKind::SemiLog, kNegative));
  } else if (name == "thm7-kn-angles") {
    add(base(name, "complete", "polygon", {8, 16, 32, 64}, {"angular"}, FitKind::LogLog, {-2.2, -1.8}));
    add(base(name + " euclidean", "complete", "euclidean-polygon", {8, 16, 32, 64}, {"angular"}, FitKind::LogLog,
             {-1.2, -0.8}));
  } else if (name == "thm8-bold") {
    const std::vector<int> ns = {6, 12, 24, 48};
    BoldSweepParams p;
    auto base_run = bold_threshold_sweep(ns, p, jobs);
    base_run.config.name = name;
    BoldSweepParams fine = p;
    fine.samples_per_unit *= 2.0;
    auto fine_run = bold_threshold_sweep(ns, fine, jobs);
    fine_run.config.name = name + " double density";
    fine_run.config.expected = {};  // only the shift check applies
    evaluate(fine_run);
    Check c{name + " density doubling shift < 10%", true, ""};
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const double a = base_run.rows[i].values.at("bold_threshold");
      const double b = fine_run.rows[i].values.at("bold_threshold");
      const double shift = std::abs(b - a) / a;
      c.detail += (c.detail.empty() ? "" : " ") + fmt(shift);
      if (!(shift < 0.1)) c.pass = false;
    }
    out.sweeps.push_back(base_run);
    out.sweeps.push_back(fine_run);
    out.checks.push_back(c);
  } else {
    throw Error(ErrorKind::Usage, "unknown preset '" + name + "'");
  }
  return out;
}

}  // namespace hyperdraw
