#include <cstring>
#include <random>
#include <sstream>

#include "doctest.h"

#include "hyperdraw/experiments.hpp"
#include "hyperdraw/io.hpp"

using namespace hyperdraw;
using doctest::Approx;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Domain;
}

std::string message_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.name = "small";
  c.family = "nested-triangles";
  c.layout = "klein";
  c.params = {4, 6, 8, 10, 12};
  c.metrics = {"ve", "min_face_area"};
  c.expected = {-1.3, -0.7};
  return c;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("fits on synthetic data") {
  std::vector<double> x{2, 3, 5, 8, 13}, y, z;
  for (double v : x) y.push_back(4.0 / (v * v));
  const Fit f = fit_loglog(x, y);
  CHECK(f.slope == Approx(-2.0).epsilon(1e-12));
  CHECK(f.intercept == Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(f.r2 == Approx(1.0).epsilon(1e-12));

  for (double v : x) z.push_back(3.0 * std::exp(-0.7 * v));
  const Fit g = fit_semilog(x, z);
  CHECK(g.slope == Approx(-0.7).epsilon(1e-12));
  CHECK(g.intercept == Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(g.r2 == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fit on seeded noise") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> noise(0.0, 0.01);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x, y;
    for (int n = 4; n <= 64; n += 4) {
      x.push_back(n);
      y.push_back(std::exp(noise(rng)) / n);
    }
    const Fit f = fit_loglog(x, y);
    CHECK(std::abs(f.slope + 1.0) < 0.05);
    CHECK(f.r2 > 0.99);
  }
}

TEST_CASE("fit errors") {
  CHECK(kind_of([] { fit_loglog({1, 2}, {1, 2}); }) == ErrorKind::Domain);
  CHECK(kind_of([] { fit_loglog({1, 2, 3}, {1, 0, 2}); }) == ErrorKind::Domain);
  CHECK(kind_of([] { fit_semilog({1, 2, 3}, {1, -1, 2}); }) == ErrorKind::Domain);
  CHECK(kind_of([] { fit_loglog({1, 2, 3}, {1, 2}); }) == ErrorKind::Domain);
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(small_config().validate());
  auto bad = [](auto mutate) {
    ExperimentConfig c = small_config();
    mutate(c);
    return kind_of([&] { c.validate(); });
  };
  CHECK(bad([](ExperimentConfig& c) { c.params.clear(); }) == ErrorKind::Domain);
  CHECK(bad([](ExperimentConfig& c) { c.family = "trees"; }) == ErrorKind::Domain);
  CHECK(bad([](ExperimentConfig& c) { c.layout = "spring"; }) == ErrorKind::Domain);
  CHECK(bad([](ExperimentConfig& c) { c.metrics = {"girth"}; }) == ErrorKind::Domain);
  CHECK(bad([](ExperimentConfig& c) { c.metrics.clear(); }) == ErrorKind::Domain);
  CHECK(bad([](ExperimentConfig& c) { c.expected = {1.0, -1.0}; }) == ErrorKind::Domain);
  CHECK(bad([](ExperimentConfig& c) { c.jobs = 0; }) == ErrorKind::Domain);
}

TEST_CASE("sweep is deterministic across job counts") {
  ExperimentConfig c = small_config();
  const ScalingResult one = run_sweep(c);
  c.jobs = 4;
  const ScalingResult four = run_sweep(c);
  REQUIRE(one.rows.size() == four.rows.size());
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    CHECK(one.rows[i].param == four.rows[i].param);
    CHECK(one.rows[i].n == four.rows[i].n);
    CHECK(one.rows[i].values == four.rows[i].values);
  }
  CHECK(std::memcmp(&one.fit, &four.fit, sizeof(Fit)) == 0);
  CHECK(one.pass == four.pass);
  CHECK(scaling_to_json(one).dump() == scaling_to_json(run_sweep(small_config())).dump());
}

TEST_CASE("verdict is recomputable from the rows") {
  ScalingResult r = run_sweep(small_config());
  CHECK(r.rows.front().n == 12);
  CHECK(r.fit.slope == Approx(-1.0).epsilon(0.2));
  const Fit before = r.fit;
  const bool pass = r.pass;
  evaluate(r);
  CHECK(r.fit.slope == before.slope);
  CHECK(r.pass == pass);
  // Tightening the band flips the verdict.
  r.config.expected = {-0.5, 0.0};
  evaluate(r);
  CHECK_FALSE(r.pass);
}

TEST_CASE("failures name the parameter") {
  ExperimentConfig c = small_config();
  c.layout = "canonical";
  c.family = "serpar";  // no canonical ordering for this family
  c.params = {8, 9, 10};
  const std::string msg = message_of([&] { run_sweep(c); });
  CHECK(msg.find("8") != std::string::npos);
}

TEST_CASE("bold threshold shrinks with n") {
  const BoldSweepParams p{1.0, 0.45, 64.0, 14};
  CHECK(bold_threshold(4, p) > bold_threshold(16, p));
}

TEST_CASE("euclidean control polygon") {
  const EuclideanLayout e = euclidean_polygon(12);
  CHECK(e.graph.edges.size() == 66);
  // Angle between neighboring chords at a vertex of a regular n-gon is pi/n.
  CHECK(euclidean_angular_resolution(e) == Approx(std::numbers::pi / 12).epsilon(1e-12));
}

TEST_CASE("presets") {
  CHECK(preset_names().size() == 7);
  CHECK(kind_of([] { run_preset("thm99"); }) == ErrorKind::Usage);
}

}  // TEST_SUITE

TEST_SUITE("io") {

TEST_CASE("graph roundtrip") {
  const GeneratedGraph g = nested_triangles(4);
  const Json j = graph_to_json(g);
  CHECK(j["n"] == 12);
  const GeneratedGraph back = graph_from_json(parse_json(j.dump()));
  CHECK(back.graph.edges == g.graph.edges);
  REQUIRE(back.construction);
  CHECK(back.construction->order() == g.construction->order());
  REQUIRE(back.layout);
  for (int i = 0; i < g.graph.n; ++i) CHECK(back.layout->coords[i] == g.layout->coords[i]);
  // Stable field order.
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"n", "edges", "coords", "order"});
}

TEST_CASE("drawing roundtrip is bit exact") {
  const Drawing d = uhp_canonical_layout(*nested_triangles(5).construction, 2.0);
  const Json j = drawing_to_json(d);
  CHECK(j["model"] == "uhp");
  const Drawing back = drawing_from_json(parse_json(j.dump(2)));
  REQUIRE(back.pos.size() == d.pos.size());
  for (std::size_t i = 0; i < d.pos.size(); ++i) {
    CHECK(std::memcmp(&back.pos[i].x, &d.pos[i].x, sizeof(double)) == 0);
    CHECK(std::memcmp(&back.pos[i].y, &d.pos[i].y, sizeof(double)) == 0);
  }
  CHECK(back.meta.construction == d.meta.construction);
  const std::vector<std::string> all{"vv", "ve", "angular", "planar", "min_face_area"};
  CHECK(metrics_to_json(back, measure(back, all)).dump() == metrics_to_json(d, measure(d, all)).dump());
}

TEST_CASE("shortest roundtrip doubles") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> bits;
  int tested = 0;
  while (tested < 5000) {
    const std::uint64_t b = bits(rng);
    double v;
    std::memcpy(&v, &b, sizeof v);
    if (!std::isfinite(v)) continue;
    ++tested;
    const double back = std::strtod(format_double(v).c_str(), nullptr);
    CHECK(std::memcmp(&back, &v, sizeof v) == 0);
  }
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("malformed JSON reports the line") {
  const std::string msg = message_of([] { parse_json("{\n  \"n\": 3,\n  \"edges\": [\n", "g.json"); });
  CHECK(msg.find("g.json:") != std::string::npos);
  CHECK(kind_of([] { parse_json("{\"n\": }"); }) == ErrorKind::Schema);
}

TEST_CASE("schema errors name the field") {
  auto field_error = [](const std::string& text, auto reader) {
    try {
      reader(parse_json(text));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Schema);
      return std::string(e.what());
    }
    return std::string();
  };
  auto graph = [](const Json& j) { graph_from_json(j); };
  auto drawing = [](const Json& j) { drawing_from_json(j); };
  auto config = [](const Json& j) { config_from_json(j); };
  CHECK(field_error(R"({"edges": []})", graph).find("'n'") != std::string::npos);
  CHECK(field_error(R"({"n": 2, "edges": [[0, "x"]]})", graph).find("'edges[0][1]'") != std::string::npos);
  CHECK(field_error(R"({"n": 2, "edges": [[0, 0]]})", graph).find("'edges'") != std::string::npos);
  CHECK(field_error(R"({"n": 2, "edges": [], "coords": [[0, 0]]})", graph).find("'coords'") != std::string::npos);
  CHECK(field_error(R"({"model": "disk", "n": 1, "edges": [], "pos": [[0, 1]]})", drawing).find("'model'") !=
        std::string::npos);
  CHECK(field_error(R"({"model": "uhp", "n": 1, "edges": [], "pos": [[0, -1]]})", drawing).find("'pos[0]'") !=
        std::string::npos);
  CHECK(field_error(R"({"family": "grid", "layout": "canonical", "params": [3], "metrics": ["vv"], "fit": "cubic"})", config)
            .find("'fit'") != std::string::npos);
  CHECK(field_error(R"({"family": "grid", "layout": "canonical", "params": [3], "metrics": ["vv"], "fit": "loglog",
                        "expected": -1, "tolerance": 0})",
                    config)
            .find("'tolerance'") != std::string::npos);
}

TEST_CASE("config from json") {
  const ExperimentConfig c = config_from_json(parse_json(R"({
    "family": "nested-triangles", "layout": "klein", "params": {"from": 4, "to": 8},
    "metrics": ["ve"], "fit": "loglog", "expected": -1.0, "tolerance": 0.2, "seed": 42})"));
  CHECK(c.params == std::vector<int>{4, 5, 6, 7, 8});
  CHECK(c.expected.lo == Approx(-1.2));
  CHECK(c.expected.hi == Approx(-0.8));
  CHECK(c.seed == 42);
  const ExperimentConfig m = config_from_json(parse_json(R"({
    "family": "serpar", "layout": "klein", "params": [8, 16, 32], "metrics": ["ve"], "fit": "loglog",
    "bound": "at_most", "expected": -0.5, "tolerance": 0.1})"));
  CHECK(std::isinf(m.expected.lo));
  CHECK(m.expected.hi == Approx(-0.4));
  const ExperimentConfig s = config_from_json(parse_json(R"({
    "family": "grid", "layout": "canonical", "params": [3, 4, 5], "metrics": ["angular"], "fit": "semilog",
    "bound": "negative"})"));
  CHECK(s.fit == FitKind::SemiLog);
  CHECK_FALSE(s.expected.contains(0.0));
  CHECK(s.expected.contains(-1e-3));
}

TEST_CASE("csv rows") {
  const ScalingResult r = run_sweep(small_config());
  std::ostringstream os;
  write_csv_rows(os, r);
  std::istringstream is(os.str());
  std::string line;
  int lines = 0;
  while (std::getline(is, line)) {
    ++lines;
    CHECK(line.rfind("nested-triangles,klein,", 0) == 0);
    CHECK(std::count(line.begin(), line.end(), ',') == 4);
  }
  CHECK(lines == int(r.rows.size() * 2));
  CHECK(std::string(kCsvHeader) == "family,layout,n,metric,value");
}

}  // TEST_SUITE
