#pragma once

// Hyperbolic plane kernel. The upper halfplane (UHP) is the canonical model;
// Poincare disk and Klein coordinates are conversion views.

#include <complex>
#include <utility>

#include <Eigen/Core>

#include "hyperdraw/error.hpp"

namespace hyperdraw {

/// Point of the upper halfplane, metric ds^2 = (dx^2 + dy^2) / y^2.
struct UhpPoint {
  double x = 0.0;
  double y = 1.0;

  UhpPoint() = default;
  /// Throws Domain for non-finite input or y <= 0, Boundary for 0 < y < 1e-12.
  UhpPoint(double x_, double y_);

  Eigen::Vector2d vec() const { return {x, y}; }
  friend bool operator==(const UhpPoint&, const UhpPoint&) = default;
};

struct DiskPoint {
  double u = 0.0;
  double v = 0.0;
};

/// Extended precision: at hyperbolic radius 10 a Klein point is only ~4e-9
/// from the unit circle, and double rounding alone would move it by ~1e-8.
struct KleinPoint {
  long double a = 0.0L;
  long double b = 0.0L;
};

// Model conversions. Each rejects points within 1e-12 of the target or
// source model boundary with a Boundary error.
DiskPoint to_disk(const UhpPoint& p);
KleinPoint to_klein(const UhpPoint& p);
UhpPoint from_disk(const DiskPoint& p);
UhpPoint from_klein(const KleinPoint& p);
KleinPoint disk_to_klein(const DiskPoint& p);
DiskPoint klein_to_disk(const KleinPoint& p);

double dist(const UhpPoint& p, const UhpPoint& q);
double dist(const DiskPoint& p, const DiskPoint& q);
double dist(const KleinPoint& p, const KleinPoint& q);

/// Direction (in model coordinates) in which the geodesic from `from` toward
/// `toward` leaves `from`. Not normalized; the larger component has magnitude 1.
Eigen::Vector2d tangent_direction(const UhpPoint& from, const UhpPoint& toward);

/// Unsigned angle between two direction vectors, stable for nearly parallel input.
double angle_between(const Eigen::Vector2d& a, const Eigen::Vector2d& b);

/// Angle at v between the geodesics toward p and q, in [0, pi].
double angle_at(const UhpPoint& v, const UhpPoint& p, const UhpPoint& q);

/// Orientation-preserving isometry z -> (a z + b) / (c z + d) with real
/// coefficients and ad - bc > 0.
struct Mobius {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  std::complex<double> operator()(std::complex<double> z) const;
  std::complex<double> inverse(std::complex<double> w) const;
};

/// Geodesic segment between two distinct points. Alongside the model
/// representation (vertical line or half-circle centered on the real axis) it
/// carries a normalizing isometry sending the supporting geodesic onto the
/// imaginary axis with p at i and q at i * exp(length()).
class GeodesicSegment {
 public:
  GeodesicSegment(const UhpPoint& p, const UhpPoint& q);

  const UhpPoint& p() const { return p_; }
  const UhpPoint& q() const { return q_; }
  bool vertical() const { return vertical_; }
  /// Real-axis center of the half-circle, or the shared x of a vertical segment.
  double center() const { return center_; }
  /// Euclidean radius of the half-circle; infinity for vertical segments.
  double radius() const { return radius_; }
  /// Ideal endpoints of the supporting geodesic (ideal_high() is +inf when vertical).
  double ideal_low() const { return ideal_lo_; }
  double ideal_high() const { return ideal_hi_; }
  double length() const { return length_; }

  std::complex<double> to_frame(const UhpPoint& z) const { return frame_({z.x, z.y}); }
  UhpPoint from_frame(std::complex<double> w) const;
  /// log of the frame height of q (p sits at log height 0).
  double frame_log_high() const { return log_hq_; }

  /// Point at hyperbolic distance s from p toward q (s may leave [0, length]).
  UhpPoint point_at(double s) const;
  /// Largest model y-coordinate attained on the segment.
  double max_y() const;
  /// Model-coordinate bounding box of the segment: (xmin, xmax, ymin, ymax).
  Eigen::Vector4d bbox() const;

 private:
  UhpPoint p_, q_;
  bool vertical_ = false;
  double center_ = 0.0;
  double radius_ = 0.0;
  double ideal_lo_ = 0.0;
  double ideal_hi_ = 0.0;
  double length_ = 0.0;
  Mobius frame_;
  double log_hq_ = 0.0;
};

/// Distance to the full geodesic supporting s.
double point_geodesic_distance(const UhpPoint& p, const GeodesicSegment& s);

/// Side of the supporting geodesic of s: -1, +1, or 0 within tolerance().
int side_of(const UhpPoint& p, const GeodesicSegment& s);

double point_segment_distance(const UhpPoint& p, const GeodesicSegment& s);

/// True iff the segments share a point other than a common endpoint.
bool segments_cross(const GeodesicSegment& s1, const GeodesicSegment& s2);

/// Intersection of the geodesics through (p1, q1) and (p2, q2).
UhpPoint crossing_point(const UhpPoint& p1, const UhpPoint& q1, const UhpPoint& p2,
                        const UhpPoint& q2);

struct Triangle {
  UhpPoint a, b, c;

  /// Throws Degenerate for coincident or collinear vertices.
  Triangle(const UhpPoint& a_, const UhpPoint& b_, const UhpPoint& c_);
};

/// pi minus the angle sum.
double triangle_area(const Triangle& t);

/// Angle opposite leg x in a right triangle with legs x and y (tangent rule).
double right_triangle_angle(double x, double y);

/// Minimum distance from a vertex to the opposite side.
double triangle_height(const Triangle& t);

struct HCircle {
  UhpPoint center;
  double r = 0.0;
};

HCircle incircle(const Triangle& t);

double circle_perimeter(double r);
double circle_area(double r);

/// Center and Euclidean radius of the hyperbolic circle in UHP coordinates.
std::pair<Eigen::Vector2d, double> uhp_circle_euclidean(const HCircle& c);

/// Point at distance r from `center` in direction `angle` (0 = +x in the model).
UhpPoint point_at_distance(const UhpPoint& center, double r, double angle);

}  // namespace hyperdraw
