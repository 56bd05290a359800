#include "hyperdraw/layout.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace hyperdraw {

std::vector<GeodesicSegment> Drawing::segments() const {
  std::vector<GeodesicSegment> out;
  out.reserve(graph.edges.size());
  for (const auto& e : graph.edges) out.push_back(segment(e));
  return out;
}

Drawing Drawing::with_edges(std::vector<Edge> edges) const {
  Drawing out{Graph::from_edges(graph.n, std::move(edges)), pos, meta};
  return out;
}

namespace {

constexpr int kMaxDoublings = 1000;
constexpr double kRefineRelTol = 1e-6;

}  // namespace

Drawing uhp_canonical_layout(const PlanarConstruction& c, double d) {
  if (!(d > 0.0)) throw Error(ErrorKind::Domain, "separation d must be positive");
  // Re-derive the runs so a hand-built construction cannot smuggle in a bad one.
  const PlanarConstruction pc = replay_construction(c.graph, c.order());
  const int n = pc.graph.n;

  Drawing out;
  out.graph = pc.graph;
  out.pos.assign(n, UhpPoint{});
  out.meta = {"uhp_canonical", {{"d", d}}};

  std::vector<int> placed_list;
  double gap = 2.0 * std::sinh(0.5 * d);
  while (dist(UhpPoint(0.0, 1.0), UhpPoint(gap, 1.0)) < d) gap = std::nextafter(gap, 2.0 * gap);
  out.pos[pc.base.first] = UhpPoint(0.0, 1.0);
  out.pos[pc.base.second] = UhpPoint(gap, 1.0);
  placed_list = {pc.base.first, pc.base.second};
  std::vector<int> chain{pc.base.first, pc.base.second};

  for (const auto& step : pc.steps) {
    const auto first = std::find(chain.begin(), chain.end(), step.run.front());
    const auto last = std::find(chain.begin(), chain.end(), step.run.back());
    const double x_mid = 0.5 * (out.pos[step.run.front()].x + out.pos[step.run.back()].x);

    std::vector<GeodesicSegment> boundary;
    double max_height = 0.0;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      boundary.emplace_back(out.pos[chain[i]], out.pos[chain[i + 1]]);
      max_height = std::max(max_height, boundary.back().max_y());
    }

    auto feasible = [&](double y) {
      const UhpPoint cand(x_mid, y);
      for (int u : placed_list)
        if (dist(cand, out.pos[u]) < d) return false;
      std::vector<GeodesicSegment> fresh;
      for (int u : step.run) fresh.emplace_back(cand, out.pos[u]);
      for (const auto& s : fresh)
        for (const auto& b : boundary)
          if (segments_cross(s, b)) return false;
      for (std::size_t i = 0; i < fresh.size(); ++i)
        for (std::size_t j = i + 1; j < fresh.size(); ++j)
          if (segments_cross(fresh[i], fresh[j])) return false;
      return true;
    };

    double hi = 2.0 * max_height;
    double lo = 0.0;
    int doublings = 0;
    while (!feasible(hi)) {
      lo = hi;
      hi *= 2.0;
      if (++doublings > kMaxDoublings || !std::isfinite(hi))
        throw Error(ErrorKind::NumericFailure, "height search for vertex " + std::to_string(step.vertex) +
                                                   " exceeded the doubling limit");
    }
    if (doublings > 0) {
      while ((hi - lo) > kRefineRelTol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid))
          hi = mid;
        else
          lo = mid;
      }
    }

    out.pos[step.vertex] = UhpPoint(x_mid, hi);
    placed_list.push_back(step.vertex);
    const auto first_idx = first - chain.begin();
    const auto last_idx = last - chain.begin();
    chain.erase(chain.begin() + first_idx + 1, chain.begin() + last_idx);
    chain.insert(chain.begin() + first_idx + 1, step.vertex);
  }
  return out;
}

EnclosingCircle min_enclosing_circle(std::vector<Eigen::Vector2d> pts) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::shuffle(pts.begin(), pts.end(), rng);

  auto from2 = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return EnclosingCircle{0.5 * (a + b), 0.5 * (a - b).norm()};
  };
  auto from3 = [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
    const Eigen::Vector2d ab = b - a, ac = c - a;
    const double det = 2.0 * (ab.x() * ac.y() - ab.y() * ac.x());
    if (std::abs(det) < 1e-300) {
      // Collinear: the widest pair.
      EnclosingCircle best = from2(a, b);
      for (const auto& cand : {from2(a, c), from2(b, c)})
        if (cand.radius > best.radius) best = cand;
      return best;
    }
    const double ab2 = ab.squaredNorm(), ac2 = ac.squaredNorm();
    const Eigen::Vector2d off((ac.y() * ab2 - ab.y() * ac2) / det, (ab.x() * ac2 - ac.x() * ab2) / det);
    return EnclosingCircle{a + off, off.norm()};
  };
  auto inside = [](const EnclosingCircle& c, const Eigen::Vector2d& p) {
    return (p - c.center).norm() <= c.radius * (1.0 + 1e-12) + 1e-15;
  };

  if (pts.empty()) return {};
  EnclosingCircle c{pts[0], 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (inside(c, pts[i])) continue;
    c = {pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (inside(c, pts[j])) continue;
      c = from2(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k)
        if (!inside(c, pts[k])) c = from3(pts[i], pts[j], pts[k]);
    }
  }
  return c;
}

Drawing klein_scaled_layout(const EuclideanLayout& e, double diameter) {
  if (!(diameter > 0.0 && diameter <= 2.0)) throw Error(ErrorKind::Domain, "diameter must lie in (0, 2]");
  if (e.coords.empty() || int(e.coords.size()) != e.graph.n)
    throw Error(ErrorKind::Domain, "layout must have one coordinate per vertex");
  const EnclosingCircle circle = min_enclosing_circle(e.coords);
  if (!(circle.radius > 0.0)) throw Error(ErrorKind::Degenerate, "all layout points coincide");

  // A Klein point at Euclidean radius rho is at hyperbolic distance atanh(rho) from the origin.
  const double rho = std::tanh(0.5 * diameter);
  Drawing out;
  out.graph = e.graph;
  out.meta = {"klein_scaled", {{"diameter", diameter}, {"scale", rho / circle.radius}}};
  out.pos.reserve(e.coords.size());
  for (const auto& p : e.coords) {
    const Eigen::Vector2d k = (p - circle.center) * (rho / circle.radius);
    out.pos.push_back(from_klein(KleinPoint{k.x(), k.y()}));
  }
  return out;
}

double regular_polygon_circumradius(int n, double side) {
  if (n < 3) throw Error(ErrorKind::Domain, "polygon needs n >= 3");
  if (!(side > 0.0)) throw Error(ErrorKind::Domain, "side must be positive");
  // cosh(side) = 1 + sinh^2 R (1 - cos(2 pi / n)) gives sinh R = sinh(side/2) / sin(pi/n).
  const double r = std::asinh(std::sinh(0.5 * side) / std::sin(std::numbers::pi / n));
  if (!std::isfinite(r)) throw Error(ErrorKind::NumericFailure, "circumradius overflow");
  return r;
}

Drawing regular_polygon_layout(int n, double side) {
  const double radius = regular_polygon_circumradius(n, side);
  Drawing out;
  out.graph = complete(n);
  out.meta = {"regular_polygon", {{"side", side}, {"radius", radius}}};
  const double rho = std::tanh(0.5 * radius);
  for (int j = 0; j < n; ++j) {
    const double angle = 2.0 * std::numbers::pi * j / n;
    out.pos.push_back(from_disk(DiskPoint{rho * std::cos(angle), rho * std::sin(angle)}));
  }
  return out;
}

}  // namespace hyperdraw
