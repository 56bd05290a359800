#pragma once

// Generators for the graph families used by the experiments. Each family is
// shipped together with a Euclidean reference layout and, for maximal planar
// families, an analytic canonical ordering.

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hyperdraw/error.hpp"

namespace hyperdraw {

using Edge = std::pair<int, int>;

/// Simple undirected graph. Edges are stored with first < second, sorted.
struct Graph {
  int n = 0;
  std::vector<Edge> edges;

  /// Normalizes and validates: Domain error on loops, duplicates or bad indices.
  static Graph from_edges(int n, std::vector<Edge> edges);

  std::vector<std::vector<int>> adjacency() const;
  std::vector<int> degrees() const;
  bool is_maximal_planar_count() const { return n >= 3 && edges.size() == std::size_t(3 * n - 6); }
};

/// Throws Domain if g is not a simple graph on [0, n).
void validate_simple(const Graph& g);

struct ConstructionStep {
  int vertex = -1;
  /// Already-placed neighbors, in order along the current outer boundary.
  std::vector<int> run;
};

/// Vertex insertion order in which every new vertex sees a contiguous run of
/// the current outer boundary (a canonical ordering).
struct PlanarConstruction {
  Graph graph;
  Edge base{-1, -1};
  std::vector<ConstructionStep> steps;

  std::vector<int> order() const;
};

/// Replays an insertion order, deriving each neighbor run from the maintained
/// boundary. Throws Construction if the order is not canonical.
PlanarConstruction replay_construction(const Graph& g, const std::vector<int>& order);

struct EuclideanLayout {
  Graph graph;
  std::vector<Eigen::Vector2d> coords;
};

/// Euclidean segment intersection over all pairs of edges without a shared endpoint.
bool crossing_free(const EuclideanLayout& layout);

struct GeneratedGraph {
  Graph graph;
  std::optional<PlanarConstruction> construction;
  std::optional<EuclideanLayout> layout;
};

GeneratedGraph nested_triangles(int k);
GeneratedGraph complete_tripartite_two_apex(int n);
GeneratedGraph grid(int k);
GeneratedGraph triangulated_grid_with_frame(int k);
Graph complete(int n);

}  // namespace hyperdraw
