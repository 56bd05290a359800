#include "hyperdraw/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include <Eigen/Dense>

namespace hyperdraw {

namespace {

constexpr int kBoldPieces = 16;
// Beyond this radius an arc is indistinguishable from its chord at any sane size.
constexpr double kMaxArcRadius = 1e6;

std::string num(double v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::Boundary, "non-finite render coordinate");
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string pt(const Eigen::Vector2d& p) { return num(p.x()) + " " + num(p.y()); }

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

// Screen coordinates flip the model's vertical axis.
Eigen::Vector2d disk_screen(const UhpPoint& p) {
  const DiskPoint w = to_disk(p);
  return {w.u, -w.v};
}

Eigen::Vector2d uhp_screen(const UhpPoint& p) { return {p.x, -p.y}; }

std::string arc_path(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c, double r) {
  const int sweep = cross(a - c, b - c) > 0.0 ? 1 : 0;
  return "M " + pt(a) + " A " + num(r) + " " + num(r) + " 0 0 " + std::to_string(sweep) + " " + pt(b);
}

std::string line_path(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return "M " + pt(a) + " L " + pt(b); }

// Euclidean image of a hyperbolic circle in disk screen coordinates.
std::pair<Eigen::Vector2d, double> disk_circle(const UhpPoint& center, double r) {
  const DiskPoint w = to_disk(center);
  const double rho = std::hypot(w.u, w.v);
  const Eigen::Vector2d dir = rho > 0.0 ? Eigen::Vector2d(w.u / rho, w.v / rho) : Eigen::Vector2d(1.0, 0.0);
  const double big_d = 2.0 * std::atanh(rho);
  const double near = std::tanh(0.5 * (big_d - r));
  const double far = std::tanh(0.5 * (big_d + r));
  const Eigen::Vector2d c = 0.5 * (near + far) * dir;
  return {{c.x(), -c.y()}, 0.5 * (far - near)};
}

}  // namespace

bool orthogonal_circle(const Eigen::Vector2d& a, const Eigen::Vector2d& b, Eigen::Vector2d& center, double& radius) {
  Eigen::Matrix2d m;
  m << a.x(), a.y(), b.x(), b.y();
  const double det = m.determinant();
  if (std::abs(det) <= 1e-15 * std::max(1e-300, a.norm() * b.norm())) return false;
  const Eigen::Vector2d rhs(0.5 * (1.0 + a.squaredNorm()), 0.5 * (1.0 + b.squaredNorm()));
  center = m.partialPivLu().solve(rhs);
  const double r2 = center.squaredNorm() - 1.0;
  if (!(r2 > 0.0)) return false;
  radius = std::sqrt(r2);
  return std::isfinite(radius);
}

std::string render_svg(const Drawing& d, const RenderOptions& opt) {
  if (!(opt.vertex_radius > 0.0)) throw Error(ErrorKind::Domain, "vertex radius must be positive");
  if (opt.bold && !(opt.edge_width > 0.0 && opt.edge_width < opt.vertex_radius))
    throw Error(ErrorKind::Domain, "bold edge width must lie in (0, vertex radius)");
  if (opt.size_px <= 0) throw Error(ErrorKind::Domain, "size must be positive");
  if (int(d.pos.size()) != d.graph.n) throw Error(ErrorKind::Domain, "drawing needs one position per vertex");

  const bool disk = opt.model == RenderModel::Disk;
  auto screen = [&](const UhpPoint& p) { return disk ? disk_screen(p) : uhp_screen(p); };

  std::ostringstream body;
  double xmin = -1.05, xmax = 1.05, ymin = -1.05, ymax = 1.05;

  if (disk) {
    body << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#888\" stroke-width=\"0.004\"/>\n";
  } else {
    xmin = ymin = std::numeric_limits<double>::infinity();
    xmax = ymax = -std::numeric_limits<double>::infinity();
    auto grow = [&](double x, double y) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    };
    for (const auto& p : d.pos) grow(p.x, -p.y);
    for (const auto& e : d.graph.edges) {
      const auto box = d.segment(e).bbox();
      grow(box(0), -box(3));
      grow(box(1), -box(2));
    }
    grow(xmin, 0.0);
    if (!std::isfinite(xmin)) xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 0.0;
    const double pad = 0.05 * std::max({xmax - xmin, ymax - ymin, 1e-9});
    xmin -= pad, xmax += pad, ymin -= pad, ymax += pad;
    body << "<path d=\"" << line_path({xmin, 0.0}, {xmax, 0.0}) << "\" stroke=\"#888\" fill=\"none\"/>\n";
  }
  const double unit = std::max(xmax - xmin, ymax - ymin) / opt.size_px;

  body << "<g class=\"edges\" fill=\"none\" stroke=\"#222\">\n";
  for (const auto& e : d.graph.edges) {
    const GeodesicSegment seg = d.segment(e);
    if (opt.bold) {
      body << "<g class=\"edge\">";
      const double len = seg.length();
      for (int i = 0; i < kBoldPieces; ++i) {
        const UhpPoint a = seg.point_at(len * i / kBoldPieces);
        const UhpPoint b = seg.point_at(len * (i + 1) / kBoldPieces);
        const UhpPoint m = seg.point_at(len * (i + 0.5) / kBoldPieces);
        double scale;
        if (disk) {
          const DiskPoint w = to_disk(m);
          scale = 0.5 * (1.0 - (w.u * w.u + w.v * w.v));
        } else {
          scale = m.y;
        }
        body << "<path d=\"" << line_path(screen(a), screen(b)) << "\" stroke-width=\"" << num(opt.edge_width * scale)
             << "\" stroke-linecap=\"round\"/>";
      }
      body << "</g>\n";
      continue;
    }
    const Eigen::Vector2d a = screen(seg.p()), b = screen(seg.q());
    std::string path;
    if (disk) {
      Eigen::Vector2d c;
      double r = 0.0;
      // Solve in model coordinates, then flip the center like every other point.
      const Eigen::Vector2d am(a.x(), -a.y()), bm(b.x(), -b.y());
      if (orthogonal_circle(am, bm, c, r) && r < kMaxArcRadius)
        path = arc_path(a, b, {c.x(), -c.y()}, r);
      else
        path = line_path(a, b);
    } else if (seg.vertical()) {
      path = line_path(a, b);
    } else {
      path = arc_path(a, b, {seg.center(), 0.0}, seg.radius());
    }
    body << "<path d=\"" << path << "\" stroke-width=\"" << num(2.0 * unit) << "\"/>\n";
  }
  body << "</g>\n";

  body << "<g class=\"vertices\" fill=\"#c33\" stroke=\"none\">\n";
  for (const auto& p : d.pos) {
    Eigen::Vector2d c;
    double r;
    if (disk) {
      std::tie(c, r) = disk_circle(p, opt.vertex_radius);
    } else {
      const auto [uc, ur] = uhp_circle_euclidean(HCircle{p, opt.vertex_radius});
      c = {uc.x(), -uc.y()};
      r = ur;
    }
    body << "<circle cx=\"" << num(c.x()) << "\" cy=\"" << num(c.y()) << "\" r=\"" << num(r) << "\"/>\n";
  }
  body << "</g>\n";

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opt.size_px << "\" height=\""
      << opt.size_px << "\" viewBox=\"" << num(xmin) << " " << num(ymin) << " " << num(xmax - xmin) << " "
      << num(ymax - ymin) << "\">\n"
      << body.str() << "</svg>\n";
  return out.str();
}

}  // namespace hyperdraw
