#include "hyperdraw/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>

namespace hyperdraw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool share_vertex(const Edge& a, const Edge& b) {
  return a.first == b.first || a.first == b.second || a.second == b.first || a.second == b.second;
}

bool boxes_overlap(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  return a[0] <= b[1] && b[0] <= a[1] && a[2] <= b[3] && b[2] <= a[3];
}

// pi minus the angle sum, without the degeneracy screening of Triangle.
double face_area(const UhpPoint& a, const UhpPoint& b, const UhpPoint& c) {
  return std::numbers::pi - (angle_at(a, b, c) + angle_at(b, c, a) + angle_at(c, a, b));
}

// Counter-clockwise order of directions: by half-plane, then by cross product.
bool ccw_less(const Eigen::Vector2d& p, const Eigen::Vector2d& q) {
  auto half = [](const Eigen::Vector2d& v) { return v.y() < 0.0 || (v.y() == 0.0 && v.x() < 0.0); };
  const bool hp = half(p), hq = half(q);
  if (hp != hq) return !hp;
  return p.x() * q.y() - p.y() * q.x() > 0.0;
}

}  // namespace

VvResult vv_resolution(const Drawing& d) {
  const int n = d.graph.n;
  if (n < 2) throw Error(ErrorKind::Domain, "vv_resolution needs at least two vertices");
  VvResult best{kInf, -1, -1};
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const double x = dist(d.pos[u], d.pos[v]);
      if (x < best.value) best = {x, u, v};
    }
  return best;
}

VeResult ve_resolution(const Drawing& d) {
  const auto segs = d.segments();
  VeResult best{kInf, -1, {-1, -1}};
  for (int v = 0; v < d.graph.n; ++v) {
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const Edge& e = d.graph.edges[i];
      if (e.first == v || e.second == v) continue;
      const double x = point_segment_distance(d.pos[v], segs[i]);
      if (x < best.value) best = {x, v, e};
    }
  }
  if (best.vertex < 0) throw Error(ErrorKind::Domain, "no vertex/edge pair without incidence");
  return best;
}

AngularResult angular_resolution(const Drawing& d) {
  const auto adj = d.graph.adjacency();
  AngularResult best{kInf, -1, -1, -1};
  for (int v = 0; v < d.graph.n; ++v) {
    const auto& nb = adj[v];
    if (nb.size() < 2) continue;
    std::vector<Eigen::Vector2d> dirs;
    dirs.reserve(nb.size());
    for (int u : nb) dirs.push_back(tangent_direction(d.pos[v], d.pos[u]));
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        const double x = angle_between(dirs[i], dirs[j]);
        if (x < best.value) best = {x, v, nb[i], nb[j]};
      }
  }
  if (best.vertex < 0) throw Error(ErrorKind::Domain, "angular resolution needs a vertex of degree >= 2");
  return best;
}

PlanarityResult is_planar_drawing(const Drawing& d) {
  const auto segs = d.segments();
  std::vector<Eigen::Vector4d> boxes;
  boxes.reserve(segs.size());
  for (const auto& s : segs) boxes.push_back(s.bbox());
  const auto& edges = d.graph.edges;
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      if (share_vertex(edges[i], edges[j]) || !boxes_overlap(boxes[i], boxes[j])) continue;
      if (segments_cross(segs[i], segs[j])) return {false, std::make_pair(edges[i], edges[j])};
    }
  return {true, std::nullopt};
}

std::vector<std::vector<int>> rotation_system(const Drawing& d) {
  auto adj = d.graph.adjacency();
  for (int v = 0; v < d.graph.n; ++v) {
    std::vector<std::pair<Eigen::Vector2d, int>> dirs;
    for (int u : adj[v]) dirs.emplace_back(tangent_direction(d.pos[v], d.pos[u]), u);
    std::stable_sort(dirs.begin(), dirs.end(),
                     [](const auto& a, const auto& b) { return ccw_less(a.first, b.first); });
    for (std::size_t i = 0; i < dirs.size(); ++i) adj[v][i] = dirs[i].second;
  }
  return adj;
}

std::vector<std::array<int, 3>> bounded_faces(const Drawing& d) {
  const int n = d.graph.n;
  const auto rot = rotation_system(d);
  std::map<Edge, bool> seen;  // directed edges
  std::vector<std::array<int, 3>> faces;
  int outer = 0;
  for (int u = 0; u < n; ++u) {
    for (int v : rot[u]) {
      if (seen[{u, v}]) continue;
      // Walk with the face on the left: at each head, turn to the neighbor
      // preceding the tail in counter-clockwise order.
      std::vector<int> face;
      int a = u, b = v;
      while (!seen[{a, b}]) {
        seen[{a, b}] = true;
        face.push_back(a);
        const auto& ring = rot[b];
        const auto it = std::find(ring.begin(), ring.end(), a);
        const std::size_t idx = std::size_t(it - ring.begin());
        const int c = ring[(idx + ring.size() - 1) % ring.size()];
        a = b;
        b = c;
        if (face.size() > std::size_t(2 * n + 2)) break;
      }
      if (face.size() != 3)
        throw Error(ErrorKind::Precondition, "face with " + std::to_string(face.size()) +
                                                 " vertices; drawing is not a planar triangulation");
      const Eigen::Vector2d t1 = tangent_direction(d.pos[face[0]], d.pos[face[1]]);
      const Eigen::Vector2d t2 = tangent_direction(d.pos[face[0]], d.pos[face[2]]);
      if (t1.x() * t2.y() - t1.y() * t2.x() > 0.0)
        faces.push_back({face[0], face[1], face[2]});
      else
        ++outer;
    }
  }
  if (outer != 1 || faces.size() != std::size_t(2 * n - 5))
    throw Error(ErrorKind::Precondition, "drawing is not a maximal planar triangulation");
  return faces;
}

FaceAreaResult min_face_area(const Drawing& d) {
  if (!is_planar_drawing(d).planar) throw Error(ErrorKind::Precondition, "min_face_area needs a planar drawing");
  const auto faces = bounded_faces(d);
  FaceAreaResult best{kInf, {-1, -1, -1}, int(faces.size())};
  for (const auto& f : faces) {
    const double a = face_area(d.pos[f[0]], d.pos[f[1]], d.pos[f[2]]);
    if (a < best.value) best = {a, f, int(faces.size())};
  }
  return best;
}

namespace {

std::uint32_t bit_reverse(std::uint32_t x) {
  x = ((x >> 1) & 0x55555555u) | ((x & 0x55555555u) << 1);
  x = ((x >> 2) & 0x33333333u) | ((x & 0x33333333u) << 2);
  x = ((x >> 4) & 0x0F0F0F0Fu) | ((x & 0x0F0F0F0Fu) << 4);
  x = ((x >> 8) & 0x00FF00FFu) | ((x & 0x00FF00FFu) << 8);
  return (x >> 16) | (x << 16);
}

// Sample indices 0..count-1 in a spread-out order so an exposed stretch is met early.
std::vector<int> spread_order(int count) {
  std::vector<int> idx(count);
  for (int i = 0; i < count; ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [](int a, int b) { return bit_reverse(std::uint32_t(a)) < bit_reverse(std::uint32_t(b)); });
  return idx;
}

class CoverageIndex {
 public:
  CoverageIndex(const Drawing& d, const BoldParams& p)
      : d_(d), half_width_(0.5 * p.edge_width), radius_(p.vertex_radius), segs_(d.segments()) {
    const double sh = std::sinh(half_width_), ex = std::exp(half_width_);
    for (const auto& s : segs_) {
      const Eigen::Vector4d b = s.bbox();
      strip_boxes_.emplace_back(b[0] - b[3] * sh, b[1] + b[3] * sh, b[2] / ex, b[3] * ex);
    }
    const double shr = std::sinh(radius_), exr = std::exp(radius_);
    for (const auto& v : d.pos) disk_boxes_.emplace_back(v.x - v.y * shr, v.x + v.y * shr, v.y / exr, v.y * exr);
  }

  const std::vector<GeodesicSegment>& segments() const { return segs_; }
  double half_width() const { return half_width_; }
  double radius() const { return radius_; }

  bool in_disk(const UhpPoint& p, int v) const {
    const auto& b = disk_boxes_[v];
    if (p.x < b[0] || p.x > b[1] || p.y < b[2] || p.y > b[3]) return false;
    return dist(p, d_.pos[v]) < radius_;
  }

  bool in_strip(const UhpPoint& p, int e) const {
    const auto& b = strip_boxes_[e];
    if (p.x < b[0] || p.x > b[1] || p.y < b[2] || p.y > b[3]) return false;
    return point_segment_distance(p, segs_[e]) < half_width_;
  }

  // Feature ids: edges are [0, m), vertices are m + v. `hint` is tried first.
  template <class SkipEdge, class SkipVertex>
  bool covered(const UhpPoint& p, SkipEdge skip_edge, SkipVertex skip_vertex, int& hint) const {
    const int m = int(segs_.size());
    auto test = [&](int f) {
      if (f < m) return !skip_edge(f) && in_strip(p, f);
      return !skip_vertex(f - m) && in_disk(p, f - m);
    };
    if (hint >= 0 && test(hint)) return true;
    for (int f = 0; f < m + d_.graph.n; ++f) {
      if (f == hint) continue;
      if (test(f)) {
        hint = f;
        return true;
      }
    }
    return false;
  }

 private:
  const Drawing& d_;
  double half_width_;
  double radius_;
  std::vector<GeodesicSegment> segs_;
  std::vector<Eigen::Vector4d> strip_boxes_;
  std::vector<Eigen::Vector4d> disk_boxes_;
};

void check_bold_params(const BoldParams& p) {
  if (!(p.samples_per_unit > 0.0)) throw Error(ErrorKind::Domain, "sampling density must be positive");
  if (!(p.edge_width > 0.0)) throw Error(ErrorKind::Domain, "edge width must be positive");
  if (!(p.edge_width < p.vertex_radius)) throw Error(ErrorKind::Domain, "edge width must be below the vertex radius");
}

bool edge_fully_covered(const Drawing& d, const CoverageIndex& index, int e, double samples_per_unit) {
  const Edge& edge = d.graph.edges[e];
  const GeodesicSegment& s = index.segments()[e];
  const double delta = index.half_width();
  const double len = s.length();
  // Whole units times the density, so doubling the density refines the same sample set.
  const int intervals = std::max(2, int(std::ceil(samples_per_unit)) * int(std::ceil(len * std::cosh(delta))));
  const double off_x = std::tanh(delta), off_y = 1.0 / std::cosh(delta);

  auto skip_edge = [e](int f) { return f == e; };
  auto skip_vertex = [&](int v) { return v == edge.first || v == edge.second; };
  int hint[2] = {-1, -1};
  for (int j : spread_order(intervals + 1)) {
    const double t = std::exp(s.frame_log_high() * double(j) / intervals);
    for (int side = 0; side < 2; ++side) {
      const double sign = side == 0 ? 1.0 : -1.0;
      const UhpPoint p = s.from_frame({sign * t * off_x, t * off_y});
      if (dist(p, d.pos[edge.first]) < index.radius() || dist(p, d.pos[edge.second]) < index.radius()) continue;
      if (!index.covered(p, skip_edge, skip_vertex, hint[side])) return false;
    }
  }
  return true;
}

bool vertex_fully_covered(const Drawing& d, const CoverageIndex& index, int v, double samples_per_unit) {
  const double r = index.radius();
  const int count = std::max(8, int(std::ceil(samples_per_unit)) * int(std::ceil(circle_perimeter(r))));
  auto skip_edge = [&](int f) { return d.graph.edges[f].first == v || d.graph.edges[f].second == v; };
  auto skip_vertex = [v](int u) { return u == v; };
  int hint = -1;
  for (int j : spread_order(count)) {
    const UhpPoint p = point_at_distance(d.pos[v], r, 2.0 * std::numbers::pi * j / count);
    if (!index.covered(p, skip_edge, skip_vertex, hint)) return false;
  }
  return true;
}

}  // namespace

BoldReport bold_coverage(const Drawing& d, const BoldParams& params) {
  check_bold_params(params);
  const CoverageIndex index(d, params);
  BoldReport report;
  for (int e = 0; e < int(d.graph.edges.size()); ++e)
    if (edge_fully_covered(d, index, e, params.samples_per_unit)) report.fully_covered_edges.push_back(e);
  for (int v = 0; v < d.graph.n; ++v)
    if (vertex_fully_covered(d, index, v, params.samples_per_unit)) report.fully_covered_vertices.push_back(v);
  return report;
}

bool any_edge_fully_covered(const Drawing& d, const BoldParams& params) {
  check_bold_params(params);
  const CoverageIndex index(d, params);
  for (int e = 0; e < int(d.graph.edges.size()); ++e)
    if (edge_fully_covered(d, index, e, params.samples_per_unit)) return true;
  return false;
}

MetricsReport measure(const Drawing& d, const std::vector<std::string>& metrics) {
  MetricsReport r;
  for (const auto& m : metrics) {
    if (m == "vv") r.vv = vv_resolution(d);
    else if (m == "ve") r.ve = ve_resolution(d);
    else if (m == "angular") r.angular = angular_resolution(d);
    else if (m == "planar") r.planar = is_planar_drawing(d);
    else if (m == "min_face_area") r.min_face_area = min_face_area(d);
    else throw Error(ErrorKind::Usage, "unknown metric '" + m + "'");
  }
  return r;
}

}  // namespace hyperdraw
