#include "hyperdraw/geom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

namespace hyperdraw {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Degenerate: return "degenerate input";
    case ErrorKind::Boundary: return "boundary degeneracy";
    case ErrorKind::NumericFailure: return "numeric failure";
    case ErrorKind::NoIntersection: return "no intersection";
    case ErrorKind::Construction: return "construction error";
    case ErrorKind::Precondition: return "precondition violated";
    case ErrorKind::Schema: return "schema error";
    case ErrorKind::Usage: return "usage error";
  }
  return "error";
}

double tolerance() {
  static const double tol = [] {
    if (const char* env = std::getenv("HYPERDRAW_TOL")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end != env && std::isfinite(v) && v > 0.0) return v;
    }
    return 1e-9;
  }();
  return tol;
}

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Klein coordinates of a UHP point without boundary checks; stable for
// points far from i (the result simply approaches the unit circle).
Eigen::Vector2d klein_unchecked(double x, double y) {
  const double r = std::hypot(x, y);
  const double inv = 1.0 / r;
  const double denom = r + inv;
  return {(r - inv) / denom, -2.0 * (x * inv) / denom};
}

cplx uhp_from_klein_unchecked(const Eigen::Vector2d& k) {
  const double n2 = std::min(k.squaredNorm(), 1.0 - 1e-16);
  const double s = 1.0 + std::sqrt(1.0 - n2);
  const cplx w(k.x() / s, k.y() / s);
  const double den = std::norm(1.0 - w);
  return {-2.0 * w.imag() / den, (1.0 - std::norm(w)) / den};
}

}  // namespace

UhpPoint::UhpPoint(double x_, double y_) : x(x_), y(y_) {
  if (!std::isfinite(x) || !std::isfinite(y) || y <= 0.0)
    throw Error(ErrorKind::Domain, "UHP point requires finite x and y > 0");
  if (y < kBoundaryEps) throw Error(ErrorKind::Boundary, "UHP point too close to the real axis");
}

DiskPoint to_disk(const UhpPoint& p) {
  const double den = p.x * p.x + (p.y + 1.0) * (p.y + 1.0);
  if (4.0 * p.y / den < kBoundaryEps)
    throw Error(ErrorKind::Boundary, "point too close to the disk boundary");
  return {(p.x * p.x + p.y * p.y - 1.0) / den, -2.0 * p.x / den};
}

KleinPoint to_klein(const UhpPoint& p) {
  const long double x = p.x, y = p.y;
  const long double s = x * x + y * y;
  const long double gap = 4.0L * y * y / ((s + 1.0L) * (s + 1.0L));
  if (!(gap >= kBoundaryEps)) throw Error(ErrorKind::Boundary, "point too close to the Klein boundary");
  return {(s - 1.0L) / (s + 1.0L), -2.0L * x / (s + 1.0L)};
}

UhpPoint from_disk(const DiskPoint& w) {
  const double gap = 1.0 - (w.u * w.u + w.v * w.v);
  if (!(gap >= kBoundaryEps)) throw Error(ErrorKind::Boundary, "disk point too close to the boundary");
  const double den = (1.0 - w.u) * (1.0 - w.u) + w.v * w.v;
  return {-2.0 * w.v / den, gap / den};
}

KleinPoint disk_to_klein(const DiskPoint& w) {
  const long double u = w.u, v = w.v;
  const long double n2 = u * u + v * v;
  if (!(1.0L - n2 >= kBoundaryEps)) throw Error(ErrorKind::Boundary, "disk point too close to the boundary");
  return {2.0L * u / (1.0L + n2), 2.0L * v / (1.0L + n2)};
}

DiskPoint klein_to_disk(const KleinPoint& k) {
  const long double n2 = k.a * k.a + k.b * k.b;
  if (!(1.0L - n2 >= kBoundaryEps)) throw Error(ErrorKind::Boundary, "Klein point too close to the boundary");
  const long double s = 1.0L + std::sqrt(1.0L - n2);
  return {double(k.a / s), double(k.b / s)};
}

UhpPoint from_klein(const KleinPoint& k) {
  const long double n2 = k.a * k.a + k.b * k.b;
  if (!(1.0L - n2 >= kBoundaryEps)) throw Error(ErrorKind::Boundary, "Klein point too close to the boundary");
  const long double s = 1.0L + std::sqrt(1.0L - n2);
  const long double u = k.a / s, v = k.b / s;
  const long double den = (1.0L - u) * (1.0L - u) + v * v;
  return {double(-2.0L * v / den), double((1.0L - u * u - v * v) / den)};
}

double dist(const UhpPoint& p, const UhpPoint& q) {
  // 2 asinh(|p - q| / (2 sqrt(y_p y_q))) == arcosh(1 + |p - q|^2 / (2 y_p y_q)),
  // but without cancellation for nearby points.
  const double chord = std::hypot(q.x - p.x, q.y - p.y);
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(p.y) * std::sqrt(q.y)));
}

double dist(const DiskPoint& p, const DiskPoint& q) {
  const double chord2 = (p.u - q.u) * (p.u - q.u) + (p.v - q.v) * (p.v - q.v);
  const double gp = 1.0 - (p.u * p.u + p.v * p.v);
  const double gq = 1.0 - (q.u * q.u + q.v * q.v);
  return 2.0 * std::asinh(std::sqrt(chord2 / (gp * gq)));
}

double dist(const KleinPoint& p, const KleinPoint& q) {
  return dist(from_klein(p), from_klein(q));
}

Eigen::Vector2d tangent_direction(const UhpPoint& from, const UhpPoint& toward) {
  // Translate and scale `from` to i (a similarity, so directions are kept).
  // The geodesic from i toward (a, b) leaves along (2a, a^2 + b^2 - 1).
  const double a = (toward.x - from.x) / from.y;
  const double bm1 = (toward.y - from.y) / from.y;
  const double bp1 = (toward.y + from.y) / from.y;
  Eigen::Vector2d dir(2.0 * a, a * a + bm1 * bp1);
  const double scale = dir.cwiseAbs().maxCoeff();
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw Error(ErrorKind::Degenerate, "tangent direction of coincident points");
  return dir / scale;
}

double angle_between(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const double cross = a.x() * b.y() - a.y() * b.x();
  const double dot = a.dot(b);
  return std::atan2(std::abs(cross), dot);
}

double angle_at(const UhpPoint& v, const UhpPoint& p, const UhpPoint& q) {
  if (v == p || v == q) throw Error(ErrorKind::Degenerate, "angle_at with coincident points");
  return angle_between(tangent_direction(v, p), tangent_direction(v, q));
}

std::complex<double> Mobius::operator()(std::complex<double> z) const {
  return (a * z + b) / (c * z + d);
}

std::complex<double> Mobius::inverse(std::complex<double> w) const {
  return (d * w - b) / (-c * w + a);
}

GeodesicSegment::GeodesicSegment(const UhpPoint& p, const UhpPoint& q) : p_(p), q_(q) {
  if (p == q) throw Error(ErrorKind::Degenerate, "geodesic segment with coincident endpoints");
  length_ = dist(p, q);

  const double dx = q.x - p.x;
  vertical_ = dx == 0.0;
  if (!vertical_) {
    // Offset of the circle center from p.x, then the ideal endpoints without
    // the cancellation of center -/+ radius.
    const double offset = (dx * dx + (q.y - p.y) * (q.y + p.y)) / (2.0 * dx);
    const double r = std::hypot(offset, p.y);
    double lo, hi;
    if (offset >= 0.0) {
      hi = p.x + (offset + r);
      lo = p.x - p.y * p.y / (offset + r);
    } else {
      lo = p.x + (offset - r);
      hi = p.x + p.y * p.y / (r - offset);
    }
    if (std::isfinite(lo) && std::isfinite(hi) && std::isfinite(r) && hi > lo) {
      ideal_lo_ = lo;
      ideal_hi_ = hi;
      center_ = p.x + offset;
      radius_ = r;
    } else {
      vertical_ = true;
    }
  }

  Mobius m;
  if (vertical_) {
    center_ = 0.5 * (p.x + q.x);
    radius_ = std::numeric_limits<double>::infinity();
    ideal_lo_ = center_;
    ideal_hi_ = std::numeric_limits<double>::infinity();
    m = Mobius{1.0, -center_, 0.0, 1.0};
  } else {
    m = Mobius{1.0, -ideal_hi_, 1.0, -ideal_lo_};
  }
  if (std::abs(m(cplx(q.x, q.y))) < std::abs(m(cplx(p.x, p.y)))) {
    // Compose with z -> -1/z so that q sits above p.
    m = Mobius{-m.c, -m.d, m.a, m.b};
  }
  const double k = 1.0 / std::abs(m(cplx(p.x, p.y)));
  m.a *= k;
  m.b *= k;
  frame_ = m;
  log_hq_ = std::log(std::abs(frame_(cplx(q.x, q.y))));
}

UhpPoint GeodesicSegment::from_frame(std::complex<double> w) const {
  const cplx z = frame_.inverse(w);
  return {z.real(), z.imag()};
}

UhpPoint GeodesicSegment::point_at(double s) const {
  if (s == 0.0) return p_;
  if (s == length_) return q_;
  return from_frame(cplx(0.0, std::exp(s * log_hq_ / length_)));
}

double GeodesicSegment::max_y() const {
  double top = std::max(p_.y, q_.y);
  if (!vertical_) {
    const double lo = std::min(p_.x, q_.x), hi = std::max(p_.x, q_.x);
    if (center_ > lo && center_ < hi) top = std::max(top, radius_);
  }
  return top;
}

Eigen::Vector4d GeodesicSegment::bbox() const {
  return {std::min(p_.x, q_.x), std::max(p_.x, q_.x), std::min(p_.y, q_.y), max_y()};
}

double point_geodesic_distance(const UhpPoint& p, const GeodesicSegment& s) {
  const cplx w = s.to_frame(p);
  return std::asinh(std::abs(w.real()) / w.imag());
}

int side_of(const UhpPoint& p, const GeodesicSegment& s) {
  const cplx w = s.to_frame(p);
  if (std::asinh(std::abs(w.real()) / w.imag()) < tolerance()) return 0;
  return w.real() > 0.0 ? 1 : -1;
}

double point_segment_distance(const UhpPoint& p, const GeodesicSegment& s) {
  const cplx w = s.to_frame(p);
  // The perpendicular from w to the imaginary axis is the circle |z| = |w|.
  const double foot = std::log(std::abs(w));
  const double hi = s.frame_log_high();
  if (foot >= 0.0 && foot <= hi) return std::asinh(std::abs(w.real()) / w.imag());
  return std::min(dist(p, s.p()), dist(p, s.q()));
}

namespace {

// Exact-sign side of the supporting geodesic. Drawings with large vertex
// separation legitimately carry vertex/edge gaps far below tolerance(), and the
// normalizing frame resolves those gaps to relative precision.
int strict_side(const UhpPoint& p, const GeodesicSegment& s) {
  const double re = s.to_frame(p).real();
  return re > 0.0 ? 1 : (re < 0.0 ? -1 : 0);
}

// p on the supporting geodesic and between the endpoints.
bool on_segment(const UhpPoint& p, const GeodesicSegment& s) {
  const cplx w = s.to_frame(p);
  if (w.real() != 0.0) return false;
  const double foot = std::log(std::abs(w));
  return foot >= 0.0 && foot <= s.frame_log_high();
}

bool near(const UhpPoint& a, const UhpPoint& b) { return a == b || dist(a, b) < tolerance(); }

}  // namespace

bool segments_cross(const GeodesicSegment& s1, const GeodesicSegment& s2) {
  // Shared endpoint: the segments overlap only if they run along the same geodesic.
  const std::pair<const UhpPoint*, const UhpPoint*> ends1{&s1.p(), &s1.q()};
  const std::pair<const UhpPoint*, const UhpPoint*> ends2{&s2.p(), &s2.q()};
  for (const UhpPoint* a : {ends1.first, ends1.second}) {
    for (const UhpPoint* b : {ends2.first, ends2.second}) {
      if (!near(*a, *b)) continue;
      const UhpPoint& other1 = (a == ends1.first) ? s1.q() : s1.p();
      const UhpPoint& other2 = (b == ends2.first) ? s2.q() : s2.p();
      if (near(other1, other2)) return true;  // same segment
      // Collinear and pointing the same way iff one far end lies on the other segment.
      return on_segment(other1, s2) || on_segment(other2, s1);
    }
  }

  // Orientation tests against each supporting geodesic; in the Klein model
  // these are exactly the Euclidean chord predicates.
  const int o1 = strict_side(s2.p(), s1), o2 = strict_side(s2.q(), s1);
  const int o3 = strict_side(s1.p(), s2), o4 = strict_side(s1.q(), s2);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(s2.p(), s1)) return true;
  if (o2 == 0 && on_segment(s2.q(), s1)) return true;
  if (o3 == 0 && on_segment(s1.p(), s2)) return true;
  if (o4 == 0 && on_segment(s1.q(), s2)) return true;
  return false;
}

UhpPoint crossing_point(const UhpPoint& p1, const UhpPoint& q1, const UhpPoint& p2,
                        const UhpPoint& q2) {
  const GeodesicSegment g1(p1, q1);
  const cplx a = g1.to_frame(p2);
  const cplx b = g1.to_frame(q2);
  // Ideal endpoints of the second geodesic in the frame of the first.
  const UhpPoint fa(a.real(), a.imag()), fb(b.real(), b.imag());
  const GeodesicSegment g2(fa, fb);
  if (g2.vertical()) {
    if (std::abs(g2.center()) <= tolerance() * std::max(fa.y, fb.y))
      throw Error(ErrorKind::Degenerate, "geodesics coincide");
    throw Error(ErrorKind::NoIntersection, "geodesics are asymptotic");
  }
  const double lo = g2.ideal_low(), hi = g2.ideal_high();
  if (!(lo < 0.0 && hi > 0.0)) throw Error(ErrorKind::NoIntersection, "geodesics do not intersect");
  const double height = std::sqrt(-lo) * std::sqrt(hi);
  return g1.from_frame(cplx(0.0, height));
}

Triangle::Triangle(const UhpPoint& a_, const UhpPoint& b_, const UhpPoint& c_)
    : a(a_), b(b_), c(c_) {
  if (near(a, b) || near(b, c) || near(a, c))
    throw Error(ErrorKind::Degenerate, "triangle with coincident vertices");
  if (side_of(c, GeodesicSegment(a, b)) == 0)
    throw Error(ErrorKind::Degenerate, "triangle vertices are collinear");
}

double triangle_area(const Triangle& t) {
  return kPi - (angle_at(t.a, t.b, t.c) + angle_at(t.b, t.c, t.a) + angle_at(t.c, t.a, t.b));
}

double right_triangle_angle(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw Error(ErrorKind::Domain, "right triangle legs must be positive");
  return std::atan(std::tanh(x) / std::sinh(y));
}

double triangle_height(const Triangle& t) {
  return std::min({point_segment_distance(t.a, GeodesicSegment(t.b, t.c)),
                   point_segment_distance(t.b, GeodesicSegment(t.c, t.a)),
                   point_segment_distance(t.c, GeodesicSegment(t.a, t.b))});
}

HCircle incircle(const Triangle& t) {
  const GeodesicSegment sides[3] = {GeodesicSegment(t.b, t.c), GeodesicSegment(t.c, t.a),
                                    GeodesicSegment(t.a, t.b)};

  // Seed: Euclidean incenter of the Klein triangle, re-centered a few times so
  // the Klein picture is not squeezed against the boundary.
  UhpPoint guess = t.a;
  for (int round = 0; round < 4; ++round) {
    Eigen::Vector2d k[3];
    const UhpPoint* verts[3] = {&t.a, &t.b, &t.c};
    for (int i = 0; i < 3; ++i)
      k[i] = klein_unchecked((verts[i]->x - guess.x) / guess.y, verts[i]->y / guess.y);
    const double wa = (k[1] - k[2]).norm(), wb = (k[2] - k[0]).norm(), wc = (k[0] - k[1]).norm();
    const Eigen::Vector2d inc = (wa * k[0] + wb * k[1] + wc * k[2]) / (wa + wb + wc);
    const cplx z = uhp_from_klein_unchecked(inc);
    guess = UhpPoint(guess.x + guess.y * z.real(), guess.y * z.imag());
  }

  // Newton on the residual (d0 - d1, d0 - d2) in local coordinates
  // z = (gx + gy * u, gy * exp(v)); the max-minus-min spread goes to zero.
  auto distances = [&](const UhpPoint& z) {
    return Eigen::Vector3d(point_geodesic_distance(z, sides[0]), point_geodesic_distance(z, sides[1]),
                           point_geodesic_distance(z, sides[2]));
  };
  auto residual = [&](const Eigen::Vector3d& d) { return Eigen::Vector2d(d[0] - d[1], d[0] - d[2]); };
  auto local = [&](const UhpPoint& g, double u, double v) {
    return UhpPoint(g.x + g.y * u, g.y * std::exp(v));
  };

  Eigen::Vector3d d = distances(guess);
  for (int iter = 0; iter < 200; ++iter) {
    const double spread = d.maxCoeff() - d.minCoeff();
    if (spread <= 1e-13 * std::max(1.0, d.maxCoeff())) break;
    const double h = 1e-6 * std::min(1.0, d.minCoeff());
    Eigen::Matrix2d jac;
    for (int j = 0; j < 2; ++j) {
      const double du = j == 0 ? h : 0.0, dv = j == 1 ? h : 0.0;
      const Eigen::Vector2d rp = residual(distances(local(guess, du, dv)));
      const Eigen::Vector2d rm = residual(distances(local(guess, -du, -dv)));
      jac.col(j) = (rp - rm) / (2.0 * h);
    }
    const Eigen::Vector2d r0 = residual(d);
    Eigen::Vector2d step = -jac.colPivHouseholderQr().solve(r0);
    if (!step.allFinite()) break;
    // Keep steps local and backtrack until the residual shrinks.
    const double cap = 0.5;
    if (step.norm() > cap) step *= cap / step.norm();
    bool improved = false;
    for (int ls = 0; ls < 40; ++ls) {
      const UhpPoint cand = local(guess, step[0], step[1]);
      const Eigen::Vector3d dc = distances(cand);
      if (residual(dc).norm() < r0.norm()) {
        guess = cand;
        d = dc;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }

  const double spread = d.maxCoeff() - d.minCoeff();
  if (!(spread <= 1e-10)) throw Error(ErrorKind::NumericFailure, "incircle solver did not converge");
  return {guess, d.mean()};
}

double circle_perimeter(double r) {
  if (!(r >= 0.0)) throw Error(ErrorKind::Domain, "circle radius must be nonnegative");
  return 2.0 * kPi * std::sinh(r);
}

double circle_area(double r) {
  if (!(r >= 0.0)) throw Error(ErrorKind::Domain, "circle radius must be nonnegative");
  const double s = std::sinh(0.5 * r);
  return 4.0 * kPi * s * s;
}

std::pair<Eigen::Vector2d, double> uhp_circle_euclidean(const HCircle& c) {
  return {Eigen::Vector2d(c.center.x, c.center.y * std::cosh(c.r)), c.center.y * std::sinh(c.r)};
}

UhpPoint point_at_distance(const UhpPoint& center, double r, double angle) {
  // At i the Cayley map rotates directions by -pi/2; go out radially in the
  // disk and come back, then undo the similarity that moved center to i.
  const double rho = std::tanh(0.5 * r);
  const cplx w = std::polar(rho, angle - 0.5 * kPi);
  const double den = std::norm(1.0 - w);
  const double zx = -2.0 * w.imag() / den;
  const double zy = (1.0 - rho * rho) / den;
  return {center.x + center.y * zx, center.y * zy};
}

}  // namespace hyperdraw
