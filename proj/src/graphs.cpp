#include "hyperdraw/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hyperdraw {

void validate_simple(const Graph& g) {
  if (g.n < 0) throw Error(ErrorKind::Domain, "negative vertex count");
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto [u, v] = g.edges[i];
    if (u < 0 || v < 0 || u >= g.n || v >= g.n)
      throw Error(ErrorKind::Domain, "edge index out of range");
    if (u == v) throw Error(ErrorKind::Domain, "self loop at vertex " + std::to_string(u));
  }
  std::vector<Edge> sorted;
  sorted.reserve(g.edges.size());
  for (auto [u, v] : g.edges) sorted.emplace_back(std::min(u, v), std::max(u, v));
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorKind::Domain, "duplicate edge");
}

Graph Graph::from_edges(int n, std::vector<Edge> edges) {
  Graph g{n, std::move(edges)};
  validate_simple(g);
  for (auto& [u, v] : g.edges)
    if (u > v) std::swap(u, v);
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(n, 0);
  for (auto [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

std::vector<int> PlanarConstruction::order() const {
  std::vector<int> out{base.first, base.second};
  for (const auto& s : steps) out.push_back(s.vertex);
  return out;
}

PlanarConstruction replay_construction(const Graph& g, const std::vector<int>& order) {
  if (int(order.size()) != g.n || g.n < 3)
    throw Error(ErrorKind::Construction, "order must list every vertex of a graph with n >= 3");
  std::vector<bool> placed(g.n, false);
  for (int v : order) {
    if (v < 0 || v >= g.n || placed[v]) throw Error(ErrorKind::Construction, "order is not a permutation");
    placed[v] = true;
  }
  std::fill(placed.begin(), placed.end(), false);

  const auto adj = g.adjacency();
  auto adjacent = [&](int u, int v) { return std::binary_search(adj[u].begin(), adj[u].end(), v); };

  PlanarConstruction pc;
  pc.graph = g;
  pc.base = {order[0], order[1]};
  if (!adjacent(order[0], order[1]))
    throw Error(ErrorKind::Construction, "first two vertices must be adjacent");
  placed[order[0]] = placed[order[1]] = true;
  std::vector<int> chain{order[0], order[1]};

  for (std::size_t i = 2; i < order.size(); ++i) {
    const int v = order[i];
    std::vector<int> positions;
    for (std::size_t p = 0; p < chain.size(); ++p)
      if (adjacent(v, chain[p])) positions.push_back(int(p));
    int placed_neighbors = 0;
    for (int u : adj[v]) placed_neighbors += placed[u] ? 1 : 0;
    const std::string where = "vertex " + std::to_string(v) + " (step " + std::to_string(i) + ")";
    if (positions.size() < 2)
      throw Error(ErrorKind::Construction, where + " needs at least two boundary neighbors");
    if (int(positions.size()) != placed_neighbors)
      throw Error(ErrorKind::Construction, where + " has a placed neighbor off the boundary");
    if (positions.back() - positions.front() + 1 != int(positions.size()))
      throw Error(ErrorKind::Construction, where + " has a non-contiguous neighbor run");

    ConstructionStep step{v, {}};
    for (int p : positions) step.run.push_back(chain[p]);
    chain.erase(chain.begin() + positions.front() + 1, chain.begin() + positions.back());
    chain.insert(chain.begin() + positions.front() + 1, v);
    placed[v] = true;
    pc.steps.push_back(std::move(step));
  }
  return pc;
}

namespace {

double orient(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  return (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
}

bool on_box(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& p) {
  return p.x() >= std::min(a.x(), b.x()) && p.x() <= std::max(a.x(), b.x()) &&
         p.y() >= std::min(a.y(), b.y()) && p.y() <= std::max(a.y(), b.y());
}

bool euclid_segments_meet(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                          const Eigen::Vector2d& d) {
  const double o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) return true;
  if (o1 == 0 && on_box(a, b, c)) return true;
  if (o2 == 0 && on_box(a, b, d)) return true;
  if (o3 == 0 && on_box(c, d, a)) return true;
  if (o4 == 0 && on_box(c, d, b)) return true;
  return false;
}

}  // namespace

bool crossing_free(const EuclideanLayout& layout) {
  const auto& e = layout.graph.edges;
  const auto& xy = layout.coords;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      const auto [a, b] = e[i];
      const auto [c, d] = e[j];
      if (a == c || a == d || b == c || b == d) continue;
      if (euclid_segments_meet(xy[a], xy[b], xy[c], xy[d])) return false;
    }
  }
  return true;
}

GeneratedGraph nested_triangles(int k) {
  if (k < 2) throw Error(ErrorKind::Domain, "nested_triangles needs k >= 2");
  const int n = 3 * k;
  auto id = [](int layer, int j) { return 3 * layer + (j % 3); };

  std::vector<Edge> edges;
  for (int layer = 0; layer < k; ++layer)
    for (int j = 0; j < 3; ++j) edges.emplace_back(id(layer, j), id(layer, j + 1));
  for (int layer = 0; layer + 1 < k; ++layer) {
    for (int j = 0; j < 3; ++j) {
      edges.emplace_back(id(layer, j), id(layer + 1, j));
      edges.emplace_back(id(layer, j), id(layer + 1, j + 1));
    }
  }

  GeneratedGraph out;
  out.graph = Graph::from_edges(n, std::move(edges));

  // Concentric equilateral triangles; vertex 0 of each layer on top, 1 bottom-left, 2 bottom-right.
  EuclideanLayout layout{out.graph, std::vector<Eigen::Vector2d>(n)};
  for (int layer = 0; layer < k; ++layer) {
    for (int j = 0; j < 3; ++j) {
      const double angle = std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * j / 3.0;
      layout.coords[id(layer, j)] = double(layer + 1) * Eigen::Vector2d(std::cos(angle), std::sin(angle));
    }
  }
  out.layout = std::move(layout);

  // Base is the bottom edge of the outer triangle; bottom pairs go in from the
  // outside in, top vertices come back out, and the outer top vertex is last.
  std::vector<int> order;
  for (int layer = k - 1; layer >= 0; --layer) {
    order.push_back(id(layer, 1));
    order.push_back(id(layer, 2));
  }
  for (int layer = 0; layer < k; ++layer) order.push_back(id(layer, 0));
  out.construction = replay_construction(out.graph, order);
  return out;
}

GeneratedGraph complete_tripartite_two_apex(int n) {
  if (n < 4) throw Error(ErrorKind::Domain, "complete_tripartite_two_apex needs n >= 4");
  std::vector<Edge> edges{{0, 1}};
  for (int v = 2; v < n; ++v) {
    edges.emplace_back(0, v);
    edges.emplace_back(1, v);
  }
  GeneratedGraph out;
  out.graph = Graph::from_edges(n, std::move(edges));

  // Apexes on a base edge, the remaining vertices stacked above its midpoint so
  // the triangles apex-apex-v are nested on one side.
  EuclideanLayout layout{out.graph, std::vector<Eigen::Vector2d>(n)};
  layout.coords[0] = {0.0, 0.0};
  layout.coords[1] = {1.0, 0.0};
  for (int v = 2; v < n; ++v) layout.coords[v] = {0.5, double(v - 1)};
  out.layout = std::move(layout);
  return out;
}

namespace {

std::vector<Edge> lattice_edges(int k) {
  std::vector<Edge> edges;
  for (int y = 0; y < k; ++y) {
    for (int x = 0; x < k; ++x) {
      if (x + 1 < k) edges.emplace_back(y * k + x, y * k + x + 1);
      if (y + 1 < k) edges.emplace_back(y * k + x, (y + 1) * k + x);
    }
  }
  return edges;
}

std::vector<Eigen::Vector2d> lattice_coords(int k) {
  std::vector<Eigen::Vector2d> coords;
  for (int y = 0; y < k; ++y)
    for (int x = 0; x < k; ++x) coords.emplace_back(double(x), double(y));
  return coords;
}

}  // namespace

GeneratedGraph grid(int k) {
  if (k < 2) throw Error(ErrorKind::Domain, "grid needs k >= 2");
  GeneratedGraph out;
  out.graph = Graph::from_edges(k * k, lattice_edges(k));
  out.layout = EuclideanLayout{out.graph, lattice_coords(k)};
  return out;
}

GeneratedGraph triangulated_grid_with_frame(int k) {
  if (k < 2) throw Error(ErrorKind::Domain, "triangulated_grid_with_frame needs k >= 2");
  const int s = k - 1;
  const int top = k * k, left = k * k + 1, right = k * k + 2;
  auto id = [k](int x, int y) { return y * k + x; };

  std::vector<Edge> edges = lattice_edges(k);
  for (int y = 0; y < s; ++y)
    for (int x = 0; x < s; ++x) edges.emplace_back(id(x, y), id(x + 1, y + 1));
  edges.insert(edges.end(), {{top, left}, {left, right}, {right, top}});
  // Outer ring: top row to the top frame vertex, left column and bottom row to
  // the lower-left one, right column to the lower-right one.
  for (int x = 0; x < k; ++x) {
    edges.emplace_back(id(x, s), top);
    edges.emplace_back(id(x, 0), left);
  }
  for (int y = 1; y < k; ++y) edges.emplace_back(id(0, y), left);
  for (int y = 0; y < k; ++y) edges.emplace_back(id(s, y), right);

  GeneratedGraph out;
  out.graph = Graph::from_edges(k * k + 3, std::move(edges));

  auto coords = lattice_coords(k);
  const double sd = double(s);
  coords.emplace_back(sd / 2.0, 3.0 * sd + 3.0);
  coords.emplace_back(-2.0 * sd - 2.0, -sd - 1.0);
  coords.emplace_back(3.0 * sd + 2.0, -sd - 1.0);
  out.layout = EuclideanLayout{out.graph, std::move(coords)};

  std::vector<int> order{left, right};
  for (int y = 0; y < k; ++y)
    for (int x = s; x >= 0; --x) order.push_back(id(x, y));
  order.push_back(top);
  out.construction = replay_construction(out.graph, order);
  return out;
}

Graph complete(int n) {
  if (n < 2) throw Error(ErrorKind::Domain, "complete graph needs n >= 2");
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace hyperdraw
