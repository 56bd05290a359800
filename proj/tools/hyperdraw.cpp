// hyperdraw command-line front end.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "hyperdraw/io.hpp"
#include "hyperdraw/render.hpp"

using namespace hyperdraw;

namespace {

struct Globals {
  std::string out;
  std::string format;
  std::uint64_t seed = 0;
  int jobs = 1;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw Error(ErrorKind::Usage, "cannot write '" + g.out + "'");
  f << text;
}

std::string format_or(const Globals& g, const std::string& fallback, std::initializer_list<const char*> allowed) {
  const std::string f = g.format.empty() ? fallback : g.format;
  for (const char* a : allowed)
    if (f == a) return f;
  throw Error(ErrorKind::Usage, "format '" + f + "' is not available for this subcommand");
}

Json load(const std::string& path) { return parse_json(read_file(path), path); }

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

int run_generate(const Globals& g, const std::string& family, int k, int n) {
  format_or(g, "json", {"json"});
  GeneratedGraph out;
  auto need = [](int v, const char* flag) {
    if (v < 0) throw Error(ErrorKind::Usage, std::string("this family needs --") + flag);
    return v;
  };
  if (family == "nested-triangles") out = nested_triangles(need(k, "k"));
  else if (family == "grid") out = grid(need(k, "k"));
  else if (family == "triangulated-grid") out = triangulated_grid_with_frame(need(k, "k"));
  else if (family == "serpar") out = complete_tripartite_two_apex(need(n, "n"));
  else if (family == "complete") out = {complete(need(n, "n")), std::nullopt, std::nullopt};
  else throw Error(ErrorKind::Usage, "unknown family '" + family + "'");
  emit(g, graph_to_json(out).dump(2) + "\n");
  return 0;
}

int run_layout(const Globals& g, const std::string& file, const std::string& method, double d, double diameter,
               double side) {
  format_or(g, "json", {"json"});
  const GeneratedGraph gg = graph_from_json(load(file));
  Drawing out;
  if (method == "canonical") {
    if (!gg.construction) throw Error(ErrorKind::Usage, "canonical layout needs an 'order' in the graph file");
    out = uhp_canonical_layout(*gg.construction, d);
  } else if (method == "klein") {
    if (!gg.layout) throw Error(ErrorKind::Usage, "klein layout needs 'coords' in the graph file");
    out = klein_scaled_layout(*gg.layout, diameter);
  } else if (method == "polygon") {
    if (gg.graph.edges != complete(gg.graph.n).edges) throw Error(ErrorKind::Usage, "polygon layout needs a complete graph");
    out = regular_polygon_layout(gg.graph.n, side);
  } else {
    throw Error(ErrorKind::Usage, "unknown layout method '" + method + "'");
  }
  emit(g, drawing_to_json(out).dump(2) + "\n");
  return 0;
}

int run_measure(const Globals& g, const std::string& file, const std::string& metrics) {
  const std::string fmt = format_or(g, "json", {"json", "csv"});
  const Drawing d = drawing_from_json(load(file));
  const MetricsReport r = measure(d, split(metrics));
  emit(g, fmt == "csv" ? metrics_csv(d, r) : metrics_to_json(d, r).dump(2) + "\n");
  return 0;
}

int run_experiment(const Globals& g, const std::string& what) {
  const std::string fmt = format_or(g, "csv", {"csv", "json"});
  PresetResult r;
  const auto& names = preset_names();
  if (std::find(names.begin(), names.end(), what) != names.end()) {
    r = run_preset(what, g.jobs);
  } else if (what.ends_with(".json")) {
    ExperimentConfig cfg = config_from_json(load(what));
    cfg.jobs = g.jobs;
    if (g.seed) cfg.seed = g.seed;
    r = run_config(cfg);
  } else {
    throw Error(ErrorKind::Usage, "unknown preset '" + what + "'");
  }
  if (fmt == "json") {
    emit(g, preset_to_json(r).dump(2) + "\n");
  } else {
    std::ostringstream csv;
    csv << kCsvHeader << '\n';
    for (const auto& s : r.sweeps) write_csv_rows(csv, s);
    emit(g, csv.str());
  }
  for (const auto& s : r.sweeps)
    std::cerr << (s.pass ? "PASS " : "FAIL ") << s.config.name << ": slope " << s.fit.slope << ", R^2 " << s.fit.r2
              << "\n";
  for (const auto& c : r.checks)
    std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
  std::cerr << "verdict: " << (r.pass() ? "pass" : "fail") << "\n";
  return r.pass() ? 0 : 1;
}

int run_render(const Globals& g, const std::string& file, const std::string& model, RenderOptions opt) {
  format_or(g, "svg", {"svg"});
  if (model == "disk") opt.model = RenderModel::Disk;
  else if (model == "uhp") opt.model = RenderModel::Uhp;
  else throw Error(ErrorKind::Usage, "unknown model '" + model + "'");
  emit(g, render_svg(drawing_from_json(load(file)), opt));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolic graph drawing toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--out,-o", g.out, "Output file (default stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "svg"}));
  app.add_option("--seed", g.seed, "Seed recorded with experiment results");
  app.add_option("--jobs,-j", g.jobs, "Worker threads for experiments")->check(CLI::PositiveNumber);

  std::string family, file, method = "canonical", metrics = "vv,ve,angular,planar", what, model = "disk";
  int k = -1, n = -1;
  double d = 1.0, diameter = 1.0, side = 1.0;
  RenderOptions ropt;

  auto* gen = app.add_subcommand("generate", "Generate a graph family");
  gen->add_option("family", family, "nested-triangles | grid | triangulated-grid | serpar | complete")->required();
  gen->add_option("--k", k, "Layer count or grid side");
  gen->add_option("--n", n, "Vertex count");

  auto* lay = app.add_subcommand("layout", "Lay out a graph file");
  lay->add_option("graph", file, "Graph JSON")->required()->check(CLI::ExistingFile);
  lay->add_option("--method", method, "canonical | klein | polygon");
  lay->add_option("--d", d, "Separation for the canonical layout");
  lay->add_option("--diameter", diameter, "Hyperbolic diameter for the Klein layout");
  lay->add_option("--side", side, "Side length for the polygon layout");

  auto* mea = app.add_subcommand("measure", "Measure a drawing file");
  mea->add_option("drawing", file, "Drawing JSON")->required()->check(CLI::ExistingFile);
  mea->add_option("--metrics", metrics, "Comma-separated: vv,ve,angular,planar,min_face_area");

  auto* exp = app.add_subcommand("experiment", "Run a named preset or a JSON config");
  exp->add_option("preset", what, "Preset name or config file")->required();

  auto* ren = app.add_subcommand("render", "Render a drawing as SVG");
  ren->add_option("drawing", file, "Drawing JSON")->required()->check(CLI::ExistingFile);
  ren->add_option("--model", model, "disk | uhp");
  ren->add_option("--vertex-radius", ropt.vertex_radius, "Hyperbolic vertex radius");
  ren->add_option("--edge-width", ropt.edge_width, "Hyperbolic edge width (bold mode)");
  ren->add_flag("--bold", ropt.bold, "Draw edges as thickened strips");
  ren->add_option("--size", ropt.size_px, "Image size in pixels");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return run_generate(g, family, k, n);
    if (*lay) return run_layout(g, file, method, d, diameter, side);
    if (*mea) return run_measure(g, file, metrics);
    if (*exp) return run_experiment(g, what);
    if (*ren) return run_render(g, file, model, ropt);
  } catch (const Error& e) {
    std::cerr << "hyperdraw: " << e.what() << "\n";
    return e.kind() == ErrorKind::Usage ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "hyperdraw: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
