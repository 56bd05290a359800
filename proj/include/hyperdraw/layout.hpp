#pragma once

#include <map>
#include <string>
#include <vector>

#include "hyperdraw/geom.hpp"
#include "hyperdraw/graphs.hpp"

namespace hyperdraw {

struct DrawingMeta {
  std::string construction;
  std::map<std::string, double> params;
};

/// A graph together with UHP positions for its vertices.
struct Drawing {
  Graph graph;
  std::vector<UhpPoint> pos;
  DrawingMeta meta;

  GeodesicSegment segment(const Edge& e) const { return {pos[e.first], pos[e.second]}; }
  std::vector<GeodesicSegment> segments() const;
  /// Drawing of the subgraph with the given edges on the same vertex positions.
  Drawing with_edges(std::vector<Edge> edges) const;
};

/// Incremental upper-halfplane drawing along a canonical ordering: every new
/// vertex goes above the x-midpoint of its neighbor run, high enough to see
/// all of that run and to be at distance >= d from every placed vertex.
Drawing uhp_canonical_layout(const PlanarConstruction& c, double d);

/// Maps a Euclidean straight-line layout into a Klein-model disk of the given
/// hyperbolic diameter centered at the origin.
Drawing klein_scaled_layout(const EuclideanLayout& e, double diameter);

/// K_n with vertices equally spaced on a hyperbolic circle, adjacent vertices
/// exactly `side` apart.
Drawing regular_polygon_layout(int n, double side);

/// Circumradius R with cosh(side) = cosh^2 R - sinh^2 R cos(2 pi / n).
double regular_polygon_circumradius(int n, double side);

struct EnclosingCircle {
  Eigen::Vector2d center;
  double radius = 0.0;
};

/// Smallest enclosing circle (incremental Welzl with a fixed shuffle).
EnclosingCircle min_enclosing_circle(std::vector<Eigen::Vector2d> pts);

}  // namespace hyperdraw
