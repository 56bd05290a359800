#pragma once

#include <stdexcept>
#include <string>

namespace hyperdraw {

enum class ErrorKind {
  Domain,             // argument outside an operation's domain
  Degenerate,         // coincident points, collinear triangle, ...
  Boundary,           // point too close to the ideal boundary of a model
  NumericFailure,     // iterative solver did not converge
  NoIntersection,     // geodesics are disjoint or asymptotic
  Construction,       // planar construction replay failed
  Precondition,       // e.g. face recovery on a non-planar drawing
  Schema,             // malformed input file
  Usage,              // unknown preset, bad CLI combination
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Absolute tolerance for geometric predicates. Defaults to 1e-9 and can be
/// overridden through the HYPERDRAW_TOL environment variable.
double tolerance();

/// Minimum admissible distance to a model boundary (y in UHP, 1-|p|^2 in the disks).
inline constexpr double kBoundaryEps = 1e-12;

}  // namespace hyperdraw
