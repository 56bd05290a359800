#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"

#include "hyperdraw/io.hpp"
#include "hyperdraw/render.hpp"
#include "render_checks.hpp"

using namespace hyperdraw;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

int count_of(const std::string& s, const std::string& needle) {
  int n = 0;
  for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("hyperdraw_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

// Runs the CLI; returns its exit status. stderr goes to `err`.
int cli(const std::string& args, const fs::path& err) {
  const std::string cmd = std::string("\"") + HYPERDRAW_CLI_PATH + "\" " + args + " > /dev/null 2> \"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("render") {

TEST_CASE("two-vertex drawing has one edge path") {
  Drawing d;
  d.graph = Graph::from_edges(2, {{0, 1}});
  d.pos = {UhpPoint(-0.5, 0.7), UhpPoint(1.2, 2.0)};
  const std::string svg = render_svg(d);
  CHECK(count_of(svg, "<path") == 1);
  CHECK(count_of(svg, "<circle") == 3);  // boundary plus two vertices
  CHECK(svg.find("viewBox=\"-1.05 -1.05 2.1 2.1\"") != std::string::npos);
  CHECK(render_checks::well_formed(svg));
}

TEST_CASE("disk arcs meet the unit circle orthogonally") {
  std::vector<Drawing> ds{regular_polygon_layout(9, 1.0), klein_scaled_layout(*nested_triangles(6).layout, 1.5),
                          uhp_canonical_layout(*nested_triangles(4).construction, 1.0)};
  for (const Drawing& d : ds) {
    const std::string svg = render_svg(d);
    const auto arcs = render_checks::arcs(svg);
    CHECK(!arcs.empty());
    CHECK(render_checks::max_orthogonality_error(arcs) <= 1e-6);
    CHECK(render_checks::well_formed(svg));
  }
}

TEST_CASE("arc circles pass through the geodesic midpoint") {
  const Drawing d = regular_polygon_layout(7, 1.0);
  const auto arcs = render_checks::arcs(render_svg(d));
  CHECK(arcs.size() == d.graph.edges.size());
  for (const auto& a : arcs) {
    const auto c = render_checks::center(a);
    bool found = false;
    for (const auto& e : d.graph.edges) {
      const GeodesicSegment s = d.segment(e);
      const DiskPoint p = to_disk(s.p()), q = to_disk(s.q());
      // Screen coordinates flip v.
      if (std::hypot(p.u - a.x1, -p.v - a.y1) > 1e-12 || std::hypot(q.u - a.x2, -q.v - a.y2) > 1e-12) continue;
      found = true;
      const DiskPoint m = to_disk(s.point_at(0.5 * s.length()));
      CHECK(std::hypot(m.u - c[0], -m.v - c[1]) == Approx(a.r).epsilon(1e-9));
    }
    CHECK(found);
  }
}

TEST_CASE("rendering is pure") {
  const Drawing d = regular_polygon_layout(12, 1.0);
  CHECK(render_svg(d) == render_svg(d));
  RenderOptions bold;
  bold.bold = true;
  bold.edge_width = 0.03;
  CHECK(render_svg(d, bold) == render_svg(d, bold));
  RenderOptions uhp;
  uhp.model = RenderModel::Uhp;
  CHECK(render_svg(d, uhp) == render_svg(d, uhp));
}

TEST_CASE("bold and uhp modes") {
  const Drawing d = regular_polygon_layout(5, 1.0);
  RenderOptions bold;
  bold.bold = true;
  const std::string svg = render_svg(d, bold);
  CHECK(count_of(svg, "<path") == 16 * 10);
  CHECK(render_checks::well_formed(svg));
  RenderOptions uhp;
  uhp.model = RenderModel::Uhp;
  const std::string u = render_svg(d, uhp);
  CHECK(render_checks::well_formed(u));
  CHECK(u.find("nan") == std::string::npos);
  CHECK(u.find("inf") == std::string::npos);

  RenderOptions wide = bold;
  wide.edge_width = 0.2;
  wide.vertex_radius = 0.1;
  CHECK_THROWS_AS(render_svg(d, wide), Error);
}

TEST_CASE("orthogonal circle helper") {
  Eigen::Vector2d c;
  double r;
  REQUIRE(orthogonal_circle({0.5, 0.0}, {0.0, 0.5}, c, r));
  CHECK(c.squaredNorm() == Approx(r * r + 1.0));
  CHECK((c - Eigen::Vector2d(0.5, 0.0)).norm() == Approx(r));
  CHECK_FALSE(orthogonal_circle({0.5, 0.0}, {-0.3, 0.0}, c, r));
}

}  // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("generate, layout, measure, render") {
  TempDir tmp;
  const fs::path err = tmp.path / "err.txt";
  const fs::path g = tmp.path / "g.json", d = tmp.path / "d.json", m = tmp.path / "m.json", s = tmp.path / "d.svg";

  REQUIRE(cli("generate nested-triangles --k 5 --out \"" + g.string() + "\"", err) == 0);
  const Json gj = parse_json(slurp(g));
  CHECK(gj["n"] == 15);

  REQUIRE(cli("layout \"" + g.string() + "\" --method canonical --d 2 --out \"" + d.string() + "\"", err) == 0);
  REQUIRE(cli("measure \"" + d.string() + "\" --metrics vv,ve,angular,planar,min_face_area --out \"" + m.string() + "\"",
              err) == 0);

  // Same values as the in-process pipeline.
  const Drawing mem = uhp_canonical_layout(*nested_triangles(5).construction, 2.0);
  const MetricsReport r = measure(mem, {"vv", "ve", "angular", "planar", "min_face_area"});
  const Json mj = parse_json(slurp(m));
  CHECK(std::abs(mj["vv"].get<double>() - r.vv->value) <= 1e-12);
  CHECK(std::abs(mj["ve"].get<double>() - r.ve->value) <= 1e-12);
  CHECK(std::abs(mj["angular"].get<double>() - r.angular->value) <= 1e-12);
  CHECK(std::abs(mj["min_face_area"].get<double>() - r.min_face_area->value) <= 1e-12);
  CHECK(mj["planar"] == true);

  REQUIRE(cli("measure \"" + d.string() + "\" --format csv --out \"" + m.string() + "\"", err) == 0);
  CHECK(slurp(m).rfind("n,vv,ve,angular,min_face_area\n15,", 0) == 0);

  REQUIRE(cli("render \"" + d.string() + "\" --out \"" + s.string() + "\"", err) == 0);
  const std::string svg = slurp(s);
  CHECK(render_checks::well_formed(svg));
  CHECK(render_checks::max_orthogonality_error(render_checks::arcs(svg)) <= 1e-6);
}

TEST_CASE("experiment from a config file") {
  TempDir tmp;
  const fs::path err = tmp.path / "err.txt", cfg = tmp.path / "c.json", out = tmp.path / "o.csv";
  std::ofstream(cfg) << R"({"family": "nested-triangles", "layout": "klein", "params": [4, 6, 8, 10],
    "metrics": ["ve"], "fit": "loglog", "expected": -1.0, "tolerance": 0.3})";
  CHECK(cli("experiment \"" + cfg.string() + "\" --out \"" + out.string() + "\"", err) == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("family,layout,n,metric,value\n", 0) == 0);
  CHECK(count_of(csv, "\n") == 5);

  // An unreachable band gives exit status 1.
  std::ofstream(cfg) << R"({"family": "nested-triangles", "layout": "klein", "params": [4, 6, 8, 10],
    "metrics": ["ve"], "fit": "loglog", "expected": 3.0, "tolerance": 0.1})";
  CHECK(cli("experiment \"" + cfg.string() + "\" --out \"" + out.string() + "\"", err) == 1);
}

TEST_CASE("errors") {
  TempDir tmp;
  const fs::path err = tmp.path / "err.txt", bad = tmp.path / "bad.json";
  CHECK(cli("experiment thm99-nothing", err) == 2);
  CHECK(slurp(err).find("usage error") != std::string::npos);

  std::ofstream(bad) << "{\n  \"n\": 3,\n  \"edges\": [[0, 1],\n";
  CHECK(cli("layout \"" + bad.string() + "\" --method klein", err) == 3);
  CHECK(slurp(err).find("bad.json:") != std::string::npos);

  std::ofstream(bad, std::ios::trunc) << R"({"model": "uhp", "n": 2, "edges": [[0, 1]], "pos": [[0, 1]]})";
  CHECK(cli("measure \"" + bad.string() + "\"", err) == 3);
  CHECK(slurp(err).find("'pos'") != std::string::npos);
}

}  // TEST_SUITE
