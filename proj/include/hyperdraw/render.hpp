#pragma once

#include <string>

#include "hyperdraw/layout.hpp"

namespace hyperdraw {

enum class RenderModel { Disk, Uhp };

struct RenderOptions {
  RenderModel model = RenderModel::Disk;
  double vertex_radius = 0.05;  // hyperbolic
  double edge_width = 0.02;     // hyperbolic, used in bold mode
  bool bold = false;
  int size_px = 800;
};

/// SVG 1.1 document. Disk mode uses the viewBox [-1.05, 1.05]^2 with the model's
/// v axis pointing up; edges are arcs of circles orthogonal to the unit circle.
/// Output depends only on the arguments.
std::string render_svg(const Drawing& d, const RenderOptions& opt = {});

/// Euclidean circle (center, radius) through a and b orthogonal to the unit
/// circle. Returns false when a, b and the origin are collinear.
bool orthogonal_circle(const Eigen::Vector2d& a, const Eigen::Vector2d& b, Eigen::Vector2d& center, double& radius);

}  // namespace hyperdraw
