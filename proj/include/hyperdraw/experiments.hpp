#pragma once

// Parameter sweeps over graph families, power-law / exponential fits and the
// named presets that reproduce the asymptotic results at desk scale.

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "hyperdraw/metrics.hpp"

namespace hyperdraw {

struct Fit {
  double slope = 0.0;  // exponent (log-log) or rate (semilog)
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least squares of log y against log x.
Fit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);
/// Least squares of log y against x.
Fit fit_semilog(const std::vector<double>& x, const std::vector<double>& y);

enum class FitKind { LogLog, SemiLog };

/// Acceptance band for the fitted slope.
struct SlopeBound {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double s) const { return s >= lo && s <= hi; }
};

struct ExperimentConfig {
  std::string name;
  /// nested-triangles | triangulated-grid | grid | serpar | complete
  std::string family;
  /// Family parameter per cell: k for nested-triangles/grids, n otherwise.
  std::vector<int> params;
  /// klein | canonical | polygon | euclidean-polygon
  std::string layout;
  double d = 1.0;
  double diameter = 1.0;
  double side = 1.0;
  /// vv | ve | angular | planar | min_face_area. The first one is fitted.
  std::vector<std::string> metrics;
  FitKind fit = FitKind::LogLog;
  SlopeBound expected;
  double min_r2 = 0.9;
  std::uint64_t seed = 0;
  int jobs = 1;

  /// Throws Domain for an empty range, unknown names or a bad bound.
  void validate() const;
};

struct SweepRow {
  int param = 0;
  int n = 0;
  std::map<std::string, double> values;
};

struct ScalingResult {
  ExperimentConfig config;
  std::vector<SweepRow> rows;
  Fit fit;
  bool pass = false;
};

/// Refits the first metric from the rows and compares against the config.
void evaluate(ScalingResult& r);

/// Builds one cell's drawing. For the grid family with the canonical layout
/// the drawing is the triangulated, framed grid restricted to the grid edges.
Drawing sweep_drawing(const ExperimentConfig& cfg, int param);

ScalingResult run_sweep(const ExperimentConfig& cfg);

struct BoldSweepParams {
  double side = 1.0;
  double vertex_radius = 0.45;
  double samples_per_unit = 128.0;
  int steps = 20;
};

/// Largest edge width in (0, vertex_radius) leaving no edge fully covered,
/// found by bisection on the unit polygon layout of K_n.
double bold_threshold(int n, const BoldSweepParams& p);

ScalingResult bold_threshold_sweep(const std::vector<int>& ns, const BoldSweepParams& p, int jobs = 1);

/// Flat regular n-gon with all chords; the Euclidean control for K_n.
EuclideanLayout euclidean_polygon(int n);
double euclidean_angular_resolution(const EuclideanLayout& e);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct PresetResult {
  std::string name;
  std::vector<ScalingResult> sweeps;
  std::vector<Check> checks;

  bool pass() const;
};

const std::vector<std::string>& preset_names();
/// Throws Usage for an unknown name.
PresetResult run_preset(const std::string& name, int jobs = 1);
/// Sweep plus the face-area, separation and planarity checks its rows support.
PresetResult run_config(const ExperimentConfig& cfg);

}  // namespace hyperdraw
