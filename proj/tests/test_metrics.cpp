#include "doctest.h"

#include "hyperdraw/experiments.hpp"
#include "hyperdraw/metrics.hpp"
#include "oracles.hpp"

using namespace hyperdraw;
using doctest::Approx;

namespace {

const double kPi = std::numbers::pi;

Drawing make(int n, std::vector<Edge> edges, std::vector<UhpPoint> pos) {
  Drawing d;
  d.graph = Graph::from_edges(n, std::move(edges));
  d.pos = std::move(pos);
  return d;
}

std::vector<Drawing> maximal_planar_suite() {
  std::vector<Drawing> out;
  for (int k : {3, 5, 8}) out.push_back(klein_scaled_layout(*nested_triangles(k).layout, 1.0));
  for (int k : {3, 6}) out.push_back(klein_scaled_layout(*triangulated_grid_with_frame(k).layout, 1.0));
  for (int k : {3, 4, 6}) out.push_back(uhp_canonical_layout(*nested_triangles(k).construction, 1.0));
  out.push_back(uhp_canonical_layout(*triangulated_grid_with_frame(3).construction, 2.0));
  return out;
}

// Exposure check built from the oracle's arc parametrization: offset points
// perpendicular to the edge at distance w/2, membership by sampled distances.
bool oracle_edge_covered(const Drawing& d, int e, double w, double vr, int samples) {
  const auto [a, b] = d.graph.edges[e];
  const oracle::Arc arc(oracle::of(d.pos[a]), oracle::of(d.pos[b]));
  for (int i = 0; i <= samples; ++i) {
    const double t = arc.t0 + (arc.t1 - arc.t0) * i / samples;
    const oracle::P m = arc.at(t);
    // Model tangent direction of the arc at m.
    const double dir = arc.vertical ? kPi / 2 : t + kPi / 2;
    for (double side : {-1.0, 1.0}) {
      const UhpPoint p = point_at_distance(UhpPoint(m.x, m.y), w / 2, dir + side * kPi / 2);
      const oracle::P q = oracle::of(p);
      if (oracle::arcosh_dist(q, oracle::of(d.pos[a])) < vr || oracle::arcosh_dist(q, oracle::of(d.pos[b])) < vr) continue;
      bool covered = false;
      for (int v = 0; v < d.graph.n && !covered; ++v)
        covered = v != a && v != b && oracle::arcosh_dist(q, oracle::of(d.pos[v])) < vr;
      for (int f = 0; f < int(d.graph.edges.size()) && !covered; ++f) {
        if (f == e) continue;
        const auto [c, g] = d.graph.edges[f];
        covered = oracle::sampled_point_segment(q, oracle::of(d.pos[c]), oracle::of(d.pos[g]), 400) < w / 2;
      }
      if (!covered) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("vertex-vertex resolution") {
  CHECK(vv_resolution(regular_polygon_layout(5, 1.0)).value == Approx(1.0).epsilon(1e-9));
  const Drawing two = make(2, {{0, 1}}, {UhpPoint(0, 1), UhpPoint(0, std::exp(1.0))});
  CHECK(vv_resolution(two).value == Approx(1.0).epsilon(1e-14));
  CHECK(vv_resolution(uhp_canonical_layout(*nested_triangles(4).construction, 3.0)).value >= 3.0);
  CHECK_THROWS_AS(vv_resolution(make(1, {}, {UhpPoint(0, 1)})), Error);
}

TEST_CASE("vertex-edge resolution") {
  const Drawing single = make(2, {{0, 1}}, {UhpPoint(0, 1), UhpPoint(0, 2)});
  CHECK_THROWS_AS(ve_resolution(single), Error);

  // Triangle with an isolated vertex at its incenter.
  const UhpPoint a(-1, 1), b(1, 1.5), c(0.2, 4);
  const HCircle ic = incircle(Triangle(a, b, c));
  const Drawing tri = make(4, {{0, 1}, {1, 2}, {0, 2}}, {a, b, c, ic.center});
  const VeResult r = ve_resolution(tri);
  CHECK(r.value == Approx(ic.r).epsilon(1e-8));
  CHECK(r.vertex == 3);

  // Against the sampled oracle.
  const Drawing k = klein_scaled_layout(*nested_triangles(3).layout, 1.0);
  double ref = std::numeric_limits<double>::infinity();
  for (int v = 0; v < k.graph.n; ++v)
    for (const auto& [p, q] : k.graph.edges)
      if (v != p && v != q)
        ref = std::min(ref, oracle::sampled_point_segment(oracle::of(k.pos[v]), oracle::of(k.pos[p]), oracle::of(k.pos[q])));
  CHECK(ve_resolution(k).value == Approx(ref).epsilon(1e-7));
}

TEST_CASE("vertex-edge resolution below every face height") {
  for (const Drawing& d : maximal_planar_suite()) {
    const double ve = ve_resolution(d).value;
    for (const auto& f : bounded_faces(d)) CHECK(ve <= triangle_height(Triangle(d.pos[f[0]], d.pos[f[1]], d.pos[f[2]])) + 1e-12);
  }
}

TEST_CASE("angular resolution") {
  // Small square around i: four right angles in the Euclidean limit.
  EuclideanLayout sq{Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}), {{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  CHECK(angular_resolution(klein_scaled_layout(sq, 0.01)).value == Approx(kPi / 2).epsilon(1e-4));

  std::vector<UhpPoint> pos{UhpPoint(0, 1)};
  for (int j = 0; j < 3; ++j) pos.push_back(point_at_distance(UhpPoint(0, 1), 1.0, 0.4 + 2 * kPi * j / 3));
  const Drawing star = make(4, {{0, 1}, {0, 2}, {0, 3}}, pos);
  const AngularResult r = angular_resolution(star);
  CHECK(r.value == Approx(2 * kPi / 3).epsilon(1e-9));
  CHECK(r.vertex == 0);

  CHECK_THROWS_AS(angular_resolution(make(4, {{0, 1}, {2, 3}}, {UhpPoint(0, 1), UhpPoint(0, 2), UhpPoint(1, 1), UhpPoint(1, 2)})),
                  Error);

  // Theta(1/n^2) trend on the polygon.
  std::vector<double> ns, as;
  for (int n : {8, 16, 32, 64}) {
    ns.push_back(n);
    as.push_back(angular_resolution(regular_polygon_layout(n, 1.0)).value);
  }
  CHECK(fit_loglog(ns, as).slope == Approx(-2.0).epsilon(0.1));
}

TEST_CASE("planarity") {
  CHECK_FALSE(is_planar_drawing(regular_polygon_layout(4, 1.0)).planar);
  const PlanarityResult k4 = is_planar_drawing(regular_polygon_layout(4, 1.0));
  REQUIRE(k4.crossing);
  CHECK(k4.crossing->first == Edge{0, 2});
  CHECK(k4.crossing->second == Edge{1, 3});
  CHECK(is_planar_drawing(klein_scaled_layout(*grid(5).layout, 1.0)).planar);
  CHECK(is_planar_drawing(uhp_canonical_layout(*nested_triangles(5).construction, 1.0)).planar);
}

TEST_CASE("face areas") {
  const UhpPoint a(-1, 1), b(1, 1.5), c(0.2, 4);
  const Drawing tri = make(3, {{0, 1}, {1, 2}, {0, 2}}, {a, b, c});
  const FaceAreaResult f = min_face_area(tri);
  CHECK(f.value == Approx(triangle_area(Triangle(a, b, c))).epsilon(1e-12));
  CHECK(f.bounded_faces == 1);

  const Drawing nested = uhp_canonical_layout(*nested_triangles(4).construction, 1.0);
  CHECK(min_face_area(nested).bounded_faces == 2 * 12 - 5);
  CHECK(bounded_faces(nested).size() == 2 * 12 - 5);

  for (const Drawing& d : maximal_planar_suite()) {
    const int n = d.graph.n;
    CHECK(min_face_area(d).value <= kPi / (2 * n - 3) + 1e-9);
    CHECK(min_face_area(d).bounded_faces == 2 * n - 5);
  }

  try {
    min_face_area(regular_polygon_layout(4, 1.0));
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
  }
}

TEST_CASE("witnesses reproduce the reported minima") {
  std::vector<Drawing> ds = maximal_planar_suite();
  ds.push_back(regular_polygon_layout(9, 1.0));
  for (const Drawing& d : ds) {
    const VvResult vv = vv_resolution(d);
    CHECK(std::abs(dist(d.pos[vv.u], d.pos[vv.v]) - vv.value) <= 1e-12);
    const VeResult ve = ve_resolution(d);
    CHECK(ve.vertex != ve.edge.first);
    CHECK(ve.vertex != ve.edge.second);
    CHECK(std::abs(point_segment_distance(d.pos[ve.vertex], d.segment(ve.edge)) - ve.value) <= 1e-12);
    const AngularResult an = angular_resolution(d);
    CHECK(std::abs(angle_at(d.pos[an.vertex], d.pos[an.a], d.pos[an.b]) - an.value) <= 1e-12);
    if (d.graph.is_maximal_planar_count() && is_planar_drawing(d).planar) {
      const FaceAreaResult fa = min_face_area(d);
      const auto& f = fa.face;
      CHECK(std::abs(triangle_area(Triangle(d.pos[f[0]], d.pos[f[1]], d.pos[f[2]])) - fa.value) <= 1e-12);
    }
  }
}

TEST_CASE("measure dispatch") {
  const Drawing d = regular_polygon_layout(6, 1.0);
  const MetricsReport r = measure(d, {"vv", "angular"});
  CHECK(r.vv);
  CHECK(r.angular);
  CHECK_FALSE(r.ve);
  CHECK_THROWS_AS(measure(d, {"bogus"}), Error);
}

TEST_CASE("bold coverage basics") {
  const Drawing single = make(2, {{0, 1}}, {UhpPoint(0, 1), UhpPoint(0, 5)});
  for (double w : {0.01, 0.2, 0.45}) {
    const BoldReport r = bold_coverage(single, {0.5, w, 64});
    CHECK(r.fully_covered_edges.empty());
    CHECK(r.fully_covered_vertices.empty());
  }
  CHECK_THROWS_AS(bold_coverage(single, {0.5, 0.1, 0.0}), Error);
  CHECK_THROWS_AS(bold_coverage(single, {0.5, 0.6, 64}), Error);

  // Wider edges cover at least as much.
  const Drawing k4 = regular_polygon_layout(4, 1.0);
  const BoldReport hi = bold_coverage(k4, {0.5, 0.4, 64}), lo = bold_coverage(k4, {0.5, 0.01, 64});
  for (int e : lo.fully_covered_edges)
    CHECK(std::count(hi.fully_covered_edges.begin(), hi.fully_covered_edges.end(), e) == 1);
  for (int v : lo.fully_covered_vertices)
    CHECK(std::count(hi.fully_covered_vertices.begin(), hi.fully_covered_vertices.end(), v) == 1);
}

TEST_CASE("bold coverage under density doubling") {
  // Samples nest under doubling, so anything covered at 2x is covered at 1x.
  for (int n : {6, 10, 16})
    for (double w : {0.05, 0.1, 0.2, 0.3}) {
      const Drawing d = regular_polygon_layout(n, 1.0);
      const BoldReport coarse = bold_coverage(d, {0.45, w, 32}), fine = bold_coverage(d, {0.45, w, 64});
      for (int e : fine.fully_covered_edges)
        CHECK(std::count(coarse.fully_covered_edges.begin(), coarse.fully_covered_edges.end(), e) == 1);
      for (int v : fine.fully_covered_vertices)
        CHECK(std::count(coarse.fully_covered_vertices.begin(), coarse.fully_covered_vertices.end(), v) == 1);
    }
}

TEST_CASE("bold coverage agrees with an independent sampler away from the threshold") {
  const int n = 10;
  const Drawing d = regular_polygon_layout(n, 1.0);
  const double vr = 0.45;
  const double w = bold_threshold(n, {1.0, vr, 128.0, 20});
  REQUIRE(w < 0.7 * vr);
  auto any_covered = [&](double width) {
    for (int e = 0; e < int(d.graph.edges.size()); ++e)
      if (oracle_edge_covered(d, e, width, vr, 200)) return true;
    return false;
  };
  CHECK_FALSE(any_covered(0.8 * w));
  CHECK(any_covered(1.25 * w));
}

}  // TEST_SUITE
