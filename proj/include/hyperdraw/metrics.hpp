#pragma once

// Resolution and face measurements over drawings. All scans are all-pairs;
// ties between equal minima go to the lexicographically smallest witness.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hyperdraw/layout.hpp"

namespace hyperdraw {

struct VvResult {
  double value = 0.0;
  int u = -1, v = -1;
};

struct VeResult {
  double value = 0.0;
  int vertex = -1;
  Edge edge{-1, -1};
};

struct AngularResult {
  double value = 0.0;
  int vertex = -1;
  /// The two neighbors of `vertex` whose edges form the sharpest angle.
  int a = -1, b = -1;
};

struct PlanarityResult {
  bool planar = true;
  std::optional<std::pair<Edge, Edge>> crossing;
};

struct FaceAreaResult {
  double value = 0.0;
  std::array<int, 3> face{-1, -1, -1};
  int bounded_faces = 0;
};

VvResult vv_resolution(const Drawing& d);
VeResult ve_resolution(const Drawing& d);
AngularResult angular_resolution(const Drawing& d);
PlanarityResult is_planar_drawing(const Drawing& d);
FaceAreaResult min_face_area(const Drawing& d);

/// Neighbors of every vertex sorted counter-clockwise by tangent direction.
std::vector<std::vector<int>> rotation_system(const Drawing& d);

/// Bounded faces of a crossing-free triangulated drawing (counter-clockwise triples).
std::vector<std::array<int, 3>> bounded_faces(const Drawing& d);

struct BoldReport {
  std::vector<int> fully_covered_edges;     // indices into graph.edges
  std::vector<int> fully_covered_vertices;
};

struct BoldParams {
  double vertex_radius = 0.5;
  double edge_width = 0.1;
  double samples_per_unit = 64.0;
};

/// Sampling approximation of bold-drawing visibility: an edge is fully covered
/// when every sampled point of its strip boundary (outside its endpoint disks)
/// lies inside another edge strip or a vertex disk.
BoldReport bold_coverage(const Drawing& d, const BoldParams& params);

/// Same test as bold_coverage, stopping at the first fully covered edge.
bool any_edge_fully_covered(const Drawing& d, const BoldParams& params);

struct MetricsReport {
  std::optional<VvResult> vv;
  std::optional<VeResult> ve;
  std::optional<AngularResult> angular;
  std::optional<FaceAreaResult> min_face_area;
  std::optional<PlanarityResult> planar;
};

/// Computes the named metrics (vv, ve, angular, planar, min_face_area).
MetricsReport measure(const Drawing& d, const std::vector<std::string>& metrics);

}  // namespace hyperdraw
