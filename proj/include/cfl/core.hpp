#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cfl {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

/// A point of a model chart: three coordinates plus the chart id
/// (all bundled models are single-chart, id 0).
struct ChartPoint {
  int chart_id = 0;
  Eigen::Vector3d coords = Eigen::Vector3d::Zero();

  ChartPoint() = default;
  ChartPoint(double c0, double c1, double c2) : coords(c0, c1, c2) {}
  explicit ChartPoint(const Eigen::Vector3d& c) : coords(c) {}
};

/// A tangent vector attached to a chart point, components in the
/// coordinate basis of that chart.
struct TangentVector {
  ChartPoint base;
  Eigen::Vector3d components = Eigen::Vector3d::Zero();
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Point outside the chart, or a stencil that cannot fit inside it.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid model or operation parameter.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Requested data a model does not provide (e.g. frame fields on models
/// that only publish the Reeb field).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// A verified precondition of a check failed.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A mathematical hypothesis of a comparison theorem is not satisfied
/// by the supplied data.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Step size collapsed below the integrator floor.
class StiffnessError : public Error {
 public:
  using Error::Error;
};

/// A trajectory left the chart; carries the boundary-crossing time.
class ChartExitError : public Error {
 public:
  ChartExitError(const std::string& msg, double t) : Error(msg), exit_time(t) {}
  double exit_time = 0.0;
};

/// The flow never crossed the requested section within the horizon.
class NoReturnError : public Error {
 public:
  using Error::Error;
};

/// An iteration failed to converge.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed (integrator or quadrature).
class SelfCheckError : public Error {
 public:
  using Error::Error;
};

/// The spectral window is too narrow to determine the index.
class WindowTooSmallError : public Error {
 public:
  using Error::Error;
};

/// A discretized eigenfunction vanishes somewhere; refine the grid.
class DegenerateEigenfunctionError : public Error {
 public:
  using Error::Error;
};

/// A scalar that must not vanish identically does.
class IdenticallyZeroError : public Error {
 public:
  using Error::Error;
};

/// No hypothesis of the action bounds applies to the given data.
class InapplicableError : public Error {
 public:
  using Error::Error;
};

/// Reduce an angle to [0, 2pi).
inline double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

/// Signed angle difference wrapped to (-pi, pi].
inline double wrap_diff(double a) {
  double r = std::remainder(a, kTwoPi);
  return r;
}

/// Floor division for label arithmetic (floor(a/b), b > 0).
inline int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace cfl
