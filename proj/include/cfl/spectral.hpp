#pragma once

#include "cfl/dynamics.hpp"
#include "cfl/models.hpp"

#include <map>
#include <vector>

namespace cfl {

/// Periodic eigenvalue problem of the asymptotic operator
///   L_A v = -J0 vdot - A(t) v,  A(t) = diag(1, K(t)),
/// with K sampled on a uniform grid over [0, T).
struct AsymptoticProblem {
  double T = 0.0;
  std::vector<double> K_samples;

  /// Trigonometric interpolation of the samples at time t.
  double K_at(double t) const;
  double K_min() const;
  double K_max() const;
};

/// Eigenvalues with their windings. labels maps the integer label k to
/// tau_k, with tau_k <= tau_j for k <= j and winding(tau_k) = floor(k/2)
/// (two labels per winding, counting multiplicity).
struct Spectrum {
  struct Entry {
    double tau = 0.0;
    int winding = 0;
    int multiplicity = 1;
  };
  std::vector<Entry> entries;  // ascending tau
  std::map<int, double> labels;
  int window = 0;
};

enum class OrbitType {
  kElliptic,
  kPositiveHyperbolic,
  kNegativeHyperbolic,
  kDegenerate
};
const char* to_string(OrbitType t);

/// Builds K samples along an orbit (constant-K shortcut when the model
/// declares one; otherwise sampled along the integrated trajectory).
AsymptoticProblem make_asymptotic_problem(const ContactModel& model,
                                          const ClosedOrbitDescriptor& orbit,
                                          int n_samples = 256,
                                          double tol = 1e-9);

/// Linearized Reeb flow over one period of the orbit: Phi solving
/// dPhi/dt = J0 A Phi, Phi(0) = Id. Orbits flagged not-in-chart need a
/// constant-K model (ModelError otherwise).
LinearizedPath symplectic_path(const ContactModel& model,
                               const ClosedOrbitDescriptor& orbit,
                               double tol = 1e-10);

/// Closed-form spectrum for constant K: winding 0 carries {-1, -K}, and
/// each m >= 1 contributes the two roots of (1+tau)(K+tau) = (2 pi m/T)^2
/// with windings +m (larger root) and -m (smaller), multiplicity 2.
Spectrum constant_k_spectrum(double K, double T, int window);

/// Fourier-Galerkin discretization of L_A: Hermitian eigensolve over
/// grid_size/4 modes, windings from the angle law
///   2 pi thetadot = <(A + tau) w, w>
/// integrated over the normalized real eigenfunction. Returns all
/// eigenvalues with |winding| <= window.
Spectrum discretized_spectrum(const AsymptoticProblem& problem, int grid_size,
                              int window);

/// Second-order finite-difference discretization of the same operator
/// (trapezoidal collocation). Kept for convergence-order comparisons;
/// the Galerkin version above is the production path.
Spectrum discretized_spectrum_fd2(const AsymptoticProblem& problem,
                                  int grid_size, int window);

/// CZ = max{k : tau_k < 0}; requires the next label to be present and
/// nonnegative in the window (WindowTooSmallError otherwise).
int cz_index(const Spectrum& spectrum);

/// Classification from the trace of the return map Phi(T), with a 1e-8
/// band around |trace| = 2 for the degenerate and period-doubling cases.
OrbitType classify_orbit(const LinearizedPath& path);

/// Action-index inequalities for an orbit with the given CZ and
/// curvature range along it. Raises InapplicableError when no
/// hypothesis applies (K_min <= 0 and K_max > 1).
struct ActionIndexReport {
  double T = 0.0;
  int cz = 0;
  double k_min = 0.0, k_max = 0.0;
  bool upper_applicable = false;   // K_min >= 1: T <= 2 pi floor((cz+1)/2)
  bool lower_applicable = false;   // K_max <= 1: T >= 2 pi floor(cz/2)
  bool scaled_applicable = false;  // K_min > 0: T <= (2 pi/sqrt(K_min)) floor((cz+1)/2)
  double upper_bound = 0.0, lower_bound = 0.0, scaled_bound = 0.0;
  double upper_slack = 0.0, lower_slack = 0.0, scaled_slack = 0.0;
  bool pass = false;
};

ActionIndexReport check_action_index(double T, int cz, double k_min,
                                     double k_max);

}  // namespace cfl
