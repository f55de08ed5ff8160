#pragma once

#include "cfl/models.hpp"
#include "cfl/ode.hpp"

namespace cfl {

/// An integrated flow line in chart coordinates. Angle coordinates are
/// kept unwrapped internally; wrap_to_chart() reduces them for output.
struct Trajectory {
  std::vector<double> times;      // accepted step times, starting at 0
  std::vector<ChartPoint> points; // states at those times (unwrapped)
  OdeSolution sol;                // dense output
  double duration = 0.0;

  ChartPoint at(double t) const;
  const ChartPoint& initial() const { return points.front(); }
  const ChartPoint& final() const { return points.back(); }
};

/// Path of 2x2 matrices Phi(t) of the linearized Reeb flow in the frame
/// trivialization: Phi solves dPhi/dt = J0 A Phi with A = diag(1, K(t)),
/// Phi(0) = Id, and acts by Phi(t)(a,b) = (y(t), x(t)) where x(0)=b,
/// y(0)=a solve xdot = y, ydot = -K x.
struct LinearizedPath {
  std::vector<double> times;
  std::vector<Eigen::Matrix2d> matrices;
  OdeSolution sol;  // 4D state (y_A, x_A, y_B, x_B)
  double duration = 0.0;
  double initial_a = 1.0, initial_b = 0.0;

  Eigen::Matrix2d at(double t) const;
  Eigen::Matrix2d monodromy() const { return matrices.back(); }
  /// The particular solution (y(t), x(t)) with x(0)=initial_b, y(0)=initial_a.
  Eigen::Vector2d particular(double t) const;
};

/// Reduce periodic coordinates of p into the chart's fundamental window.
ChartPoint wrap_to_chart(const ContactModel& model, const ChartPoint& p);

/// Integrates the flow of a named frame field from p0 over [0, T]
/// (T may be negative). Raises ChartExitError when a bounded coordinate
/// leaves the chart, StiffnessError on step collapse.
Trajectory integrate_field(const ContactModel& model, FrameField f,
                           const ChartPoint& p0, double T, double tol = 1e-9);

/// Reeb flow; same contract as integrate_field with f = R.
Trajectory integrate_reeb(const ContactModel& model, const ChartPoint& p0,
                          double T, double tol = 1e-9);

/// Linearized Reeb flow over a trajectory, with K(t) evaluated along it
/// (closed form via constant_k when the model has one).
LinearizedPath integrate_linearized(const ContactModel& model,
                                    const Trajectory& traj, double a0 = 1.0,
                                    double b0 = 0.0, double tol = 1e-10);

/// Linearized flow with constant K over [0, T] (no chart trajectory
/// needed; used for orbits known only by period, e.g. toric fibers).
LinearizedPath integrate_linearized_constant(double K, double T,
                                             double a0 = 1.0, double b0 = 0.0,
                                             double tol = 1e-10);

/// A section hyperplane {coords[coord] = value} used by the orbit finder.
/// The coordinate must be strictly monotone along the flow near the seed.
struct Section {
  int coord = 1;
  double value = 0.0;
};

/// First time > 0 at which the unwrapped trajectory crosses the section
/// again (one full period of the section coordinate for periodic
/// coordinates, return to the same value otherwise). Dense-output
/// bisection plus Newton polish.
double section_return_time(const ContactModel& model, const ChartPoint& p0,
                           const Section& section, double horizon = 400.0,
                           double tol = 1e-9);

/// Newton refinement of the Poincare return-map fixed point from a seed
/// on the section. Returns the closed orbit with its period (= action).
ClosedOrbitDescriptor find_closed_orbit(const ContactModel& model,
                                        const ChartPoint& seed,
                                        const Section& section,
                                        double tol = 1e-9,
                                        double horizon = 400.0);

/// Action of a Reeb trajectory: the elapsed lambda-time, cross-checked
/// against the quadrature of lambda along the dense output. Raises
/// SelfCheckError when the two disagree beyond 10*tol.
double action(const ContactModel& model, const Trajectory& traj,
              double tol = 1e-9);

/// Shortest-closed-geodesic search on a revolution model by shooting
/// over psi-seeds, plus the analytic meridian, checked against the
/// curvature bound L_min <= 2*pi/sqrt(K_min).
struct ToponogovReport {
  double l_min = 0.0;
  double k_min = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  bool pass = false;
  std::vector<ClosedOrbitDescriptor> candidates;
};

ToponogovReport toponogov_check(const RevolutionModel& model, int n_seeds = 9,
                                double tol = 1e-9);

}  // namespace cfl
