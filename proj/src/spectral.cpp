#include "cfl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace cfl {

namespace {

using Complex = std::complex<double>;

constexpr double kNegativeThreshold = -1e-9;

/// DFT coefficients: coef[m] is the coefficient of e^{+i 2 pi m t / T}
/// for m = 0..n-1 (m > n/2 aliases to m - n).
std::vector<Complex> dft_coefficients(const std::vector<double>& samples) {
  int n = static_cast<int>(samples.size());
  std::vector<Complex> coef(n);
  for (int m = 0; m < n; ++m) {
    Complex acc(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
      double ang = -kTwoPi * double(j) * double(m) / double(n);
      acc += samples[j] * Complex(std::cos(ang), std::sin(ang));
    }
    coef[m] = acc / double(n);
  }
  return coef;
}

double trig_eval(const std::vector<Complex>& coef, double T, double t) {
  int n = static_cast<int>(coef.size());
  Complex acc(0.0, 0.0);
  for (int m = 0; m < n; ++m) {
    int mm = m <= n / 2 ? m : m - n;
    double ang = kTwoPi * double(mm) * t / T;
    acc += coef[m] * Complex(std::cos(ang), std::sin(ang));
  }
  return acc.real();
}

std::pair<double, double> constant_roots(double K, double T, int m) {
  double w = kTwoPi * double(m) / T;
  double disc = std::sqrt((K - 1.0) * (K - 1.0) + 4.0 * w * w);
  double tp = (-(K + 1.0) + disc) / 2.0;
  double tm = (-(K + 1.0) - disc) / 2.0;
  return {tm, tp};
}

void build_labels(Spectrum& spec) {
  std::map<int, std::vector<double>> by_winding;
  for (const auto& e : spec.entries) {
    for (int i = 0; i < e.multiplicity; ++i) {
      by_winding[e.winding].push_back(e.tau);
    }
  }
  spec.labels.clear();
  for (auto& [w, taus] : by_winding) {
    if (taus.size() != 2) continue;
    std::sort(taus.begin(), taus.end());
    spec.labels[2 * w] = taus[0];
    spec.labels[2 * w + 1] = taus[1];
  }
}

}  // namespace

double AsymptoticProblem::K_at(double t) const {
  if (K_samples.empty()) throw ParameterError("empty K sample vector");
  static thread_local std::vector<double> cached_samples;
  static thread_local std::vector<Complex> cached_coef;
  if (cached_samples != K_samples) {
    cached_samples = K_samples;
    cached_coef = dft_coefficients(K_samples);
  }
  return trig_eval(cached_coef, T, t);
}

double AsymptoticProblem::K_min() const {
  return *std::min_element(K_samples.begin(), K_samples.end());
}

double AsymptoticProblem::K_max() const {
  return *std::max_element(K_samples.begin(), K_samples.end());
}

const char* to_string(OrbitType t) {
  switch (t) {
    case OrbitType::kElliptic: return "elliptic";
    case OrbitType::kPositiveHyperbolic: return "positive-hyperbolic";
    case OrbitType::kNegativeHyperbolic: return "negative-hyperbolic";
    case OrbitType::kDegenerate: return "degenerate";
  }
  return "?";
}

AsymptoticProblem make_asymptotic_problem(const ContactModel& model,
                                          const ClosedOrbitDescriptor& orbit,
                                          int n_samples, double tol) {
  if (!(orbit.period > 0.0)) throw ParameterError("orbit period must be positive");
  AsymptoticProblem prob;
  prob.T = orbit.period;
  prob.K_samples.resize(n_samples);
  if (auto kc = model.constant_k()) {
    std::fill(prob.K_samples.begin(), prob.K_samples.end(), *kc);
    return prob;
  }
  if (!orbit.in_chart) {
    throw ModelError(
        "orbit lies outside the chart and the model has no constant K");
  }
  Trajectory traj = integrate_reeb(model, orbit.initial_point, orbit.period, tol);
  for (int i = 0; i < n_samples; ++i) {
    double t = orbit.period * double(i) / double(n_samples);
    prob.K_samples[i] = model.scalar(FrameScalar::K, traj.at(t));
  }
  return prob;
}

LinearizedPath symplectic_path(const ContactModel& model,
                               const ClosedOrbitDescriptor& orbit, double tol) {
  if (!(orbit.period > 0.0)) throw ParameterError("orbit period must be positive");
  if (auto kc = model.constant_k()) {
    return integrate_linearized_constant(*kc, orbit.period, 1.0, 0.0, tol);
  }
  if (!orbit.in_chart) {
    throw ModelError(
        "orbit lies outside the chart and the model has no constant K");
  }
  Trajectory traj = integrate_reeb(model, orbit.initial_point, orbit.period, tol);
  return integrate_linearized(model, traj, 1.0, 0.0, tol);
}

Spectrum constant_k_spectrum(double K, double T, int window) {
  if (!(T > 0.0)) throw ParameterError("period must be positive");
  if (window < 1) throw ParameterError("spectral window must be at least 1");

  Spectrum spec;
  spec.window = window;
  if (std::abs(K - 1.0) < 1e-14) {
    spec.entries.push_back({-1.0, 0, 2});
  } else {
    spec.entries.push_back({std::min(-1.0, -K), 0, 1});
    spec.entries.push_back({std::max(-1.0, -K), 0, 1});
  }
  for (int m = 1; m <= window; ++m) {
    auto [tm, tp] = constant_roots(K, T, m);
    spec.entries.push_back({tp, m, 2});
    spec.entries.push_back({tm, -m, 2});
  }
  std::sort(spec.entries.begin(), spec.entries.end(),
            [](const auto& a, const auto& b) { return a.tau < b.tau; });
  build_labels(spec);
  return spec;
}

Spectrum discretized_spectrum(const AsymptoticProblem& problem, int grid_size,
                              int window) {
  if (grid_size < 64) throw ParameterError("grid_size must be at least 64");
  if (window < 1) throw ParameterError("spectral window must be at least 1");
  double T = problem.T;
  if (!(T > 0.0)) throw ParameterError("period must be positive");

  int N = grid_size;
  std::vector<double> Kn(N);
  for (int i = 0; i < N; ++i) Kn[i] = problem.K_at(T * double(i) / double(N));
  std::vector<Complex> Khat = dft_coefficients(Kn);

  int M = N / 4;
  int n_modes = 2 * M + 1;
  int dim = 2 * n_modes;
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
  for (int mi = 0; mi < n_modes; ++mi) {
    int m = mi - M;
    double w = kTwoPi * double(m) / T;
    H(2 * mi + 0, 2 * mi + 1) += Complex(0.0, w);
    H(2 * mi + 1, 2 * mi + 0) += Complex(0.0, -w);
    H(2 * mi + 0, 2 * mi + 0) += -1.0;
    for (int ni = 0; ni < n_modes; ++ni) {
      int d = (mi - ni) % N;
      if (d < 0) d += N;
      H(2 * mi + 1, 2 * ni + 1) += -Khat[d];
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
  if (solver.info() != Eigen::Success) {
    throw NonConvergenceError("asymptotic-operator eigensolve failed");
  }
  const Eigen::VectorXd& evals = solver.eigenvalues();
  const Eigen::MatrixXcd& evecs = solver.eigenvectors();

  // Safety caps from the constant-K roots one winding beyond the window.
  double Kmin = *std::min_element(Kn.begin(), Kn.end());
  double Kmax = *std::max_element(Kn.begin(), Kn.end());
  double lo = constant_roots(Kmax, T, window + 1).first - 0.5;
  double hi = constant_roots(Kmin, T, window + 1).second + 0.5;

  int n_eval = 2048;
  std::vector<double> Ke(n_eval);
  for (int i = 0; i < n_eval; ++i) {
    Ke[i] = problem.K_at(T * double(i) / double(n_eval));
  }

  std::vector<std::pair<double, int>> records;
  Eigen::MatrixXcd phase(n_eval, n_modes);
  for (int i = 0; i < n_eval; ++i) {
    double t = T * double(i) / double(n_eval);
    for (int mi = 0; mi < n_modes; ++mi) {
      double ang = kTwoPi * double(mi - M) * t / T;
      phase(i, mi) = Complex(std::cos(ang), std::sin(ang));
    }
  }

  for (int idx = 0; idx < dim; ++idx) {
    double tau = evals[idx];
    if (tau < lo || tau > hi) continue;

    Eigen::MatrixXcd c(n_modes, 2);
    for (int mi = 0; mi < n_modes; ++mi) {
      c(mi, 0) = evecs(2 * mi + 0, idx);
      c(mi, 1) = evecs(2 * mi + 1, idx);
    }
    Eigen::MatrixXcd V = phase * c;  // n_eval x 2

    Eigen::MatrixXd vr = V.real();
    auto row_norms = [](const Eigen::MatrixXd& m) {
      return m.rowwise().norm();
    };
    Eigen::VectorXd nr = row_norms(vr);
    if (nr.minCoeff() < 1e-8 * nr.maxCoeff()) {
      vr = V.imag();
      nr = row_norms(vr);
    }
    if (nr.minCoeff() < 1e-10 * nr.maxCoeff()) {
      throw DegenerateEigenfunctionError(
          "discretized eigenfunction vanishes on the grid; refine grid_size");
    }

    double integ = 0.0;
    for (int i = 0; i < n_eval; ++i) {
      double w1 = vr(i, 0) / nr[i], w2 = vr(i, 1) / nr[i];
      integ += (1.0 + tau) * w1 * w1 + (Ke[i] + tau) * w2 * w2;
    }
    double delta = integ * T / double(n_eval) / kTwoPi;
    int winding = static_cast<int>(std::lround(delta));
    if (std::abs(delta - winding) > 0.05) {
      throw SelfCheckError("winding quadrature off-integer by " +
                           std::to_string(std::abs(delta - winding)));
    }
    records.emplace_back(tau, winding);
  }

  std::sort(records.begin(), records.end());
  Spectrum spec;
  spec.window = window;
  for (const auto& [tau, w] : records) {
    if (!spec.entries.empty() &&
        std::abs(spec.entries.back().tau - tau) <
            1e-7 * std::max(1.0, std::abs(tau)) &&
        spec.entries.back().winding == w) {
      spec.entries.back().multiplicity += 1;
    } else {
      spec.entries.push_back({tau, w, 1});
    }
  }
  spec.entries.erase(
      std::remove_if(spec.entries.begin(), spec.entries.end(),
                     [window](const Spectrum::Entry& e) {
                       return std::abs(e.winding) > window;
                     }),
      spec.entries.end());
  build_labels(spec);
  return spec;
}

Spectrum discretized_spectrum_fd2(const AsymptoticProblem& problem,
                                  int grid_size, int window) {
  if (grid_size < 64) throw ParameterError("grid_size must be at least 64");
  double T = problem.T;
  int N = grid_size;
  double h = T / N;

  // Trapezoidal collocation: -J0 (v_{i+1}-v_i)/h = (A_i v_i + A_{i+1} v_{i+1})/2 + tau (v_i+v_{i+1})/2,
  // assembled as the generalized problem M v = tau B v over the periodic grid.
  int dim = 2 * N;
  Eigen::MatrixXd Mm = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd Bm = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::Matrix2d J0;
  J0 << 0.0, -1.0, 1.0, 0.0;
  for (int i = 0; i < N; ++i) {
    int j = (i + 1) % N;
    Eigen::Matrix2d Ai, Aj;
    Ai << 1.0, 0.0, 0.0, problem.K_at(h * i);
    Aj << 1.0, 0.0, 0.0, problem.K_at(h * j);
    Eigen::Matrix2d D = -J0 / h;
    Mm.block<2, 2>(2 * i, 2 * i) += -D - 0.5 * Ai;
    Mm.block<2, 2>(2 * i, 2 * j) += D - 0.5 * Aj;
    Bm.block<2, 2>(2 * i, 2 * i) += 0.5 * Eigen::Matrix2d::Identity();
    Bm.block<2, 2>(2 * i, 2 * j) += 0.5 * Eigen::Matrix2d::Identity();
  }

  Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> solver(Mm, Bm);
  if (solver.info() != Eigen::Success) {
    throw NonConvergenceError("fd2 generalized eigensolve failed");
  }

  double Kmin = problem.K_min(), Kmax = problem.K_max();
  double lo = constant_roots(Kmax, T, window + 1).first - 0.5;
  double hi = constant_roots(Kmin, T, window + 1).second + 0.5;

  std::vector<std::pair<double, int>> records;
  for (int idx = 0; idx < dim; ++idx) {
    Complex alpha = solver.alphas()[idx];
    double beta = solver.betas()[idx];
    if (std::abs(beta) < 1e-12) continue;
    Complex tau_c = alpha / beta;
    if (std::abs(tau_c.imag()) > 1e-8 * std::max(1.0, std::abs(tau_c.real()))) {
      continue;
    }
    double tau = tau_c.real();
    if (tau < lo || tau > hi) continue;

    Eigen::VectorXcd v = solver.eigenvectors().col(idx);
    Eigen::VectorXd vr(dim);
    double re_min = 1e300, re_max = 0.0;
    for (int i = 0; i < N; ++i) {
      double n2 = std::hypot(v[2 * i].real(), v[2 * i + 1].real());
      re_min = std::min(re_min, n2);
      re_max = std::max(re_max, n2);
    }
    bool use_imag = re_min < 1e-8 * re_max;
    for (int i = 0; i < dim; ++i) {
      vr[i] = use_imag ? v[i].imag() : v[i].real();
    }

    double integ = 0.0;
    bool degenerate = false;
    for (int i = 0; i < N; ++i) {
      double n2 = std::hypot(vr[2 * i], vr[2 * i + 1]);
      if (n2 < 1e-10 * vr.norm()) {
        degenerate = true;
        break;
      }
      double w1 = vr[2 * i] / n2, w2 = vr[2 * i + 1] / n2;
      integ += (1.0 + tau) * w1 * w1 + (problem.K_at(h * i) + tau) * w2 * w2;
    }
    if (degenerate) continue;
    double delta = integ * h / kTwoPi;
    int winding = static_cast<int>(std::lround(delta));
    if (std::abs(delta - winding) > 0.4) continue;
    records.emplace_back(tau, winding);
  }

  std::sort(records.begin(), records.end());
  Spectrum spec;
  spec.window = window;
  for (const auto& [tau, w] : records) {
    if (!spec.entries.empty() &&
        std::abs(spec.entries.back().tau - tau) <
            1e-6 * std::max(1.0, std::abs(tau)) &&
        spec.entries.back().winding == w) {
      spec.entries.back().multiplicity += 1;
    } else {
      spec.entries.push_back({tau, w, 1});
    }
  }
  spec.entries.erase(
      std::remove_if(spec.entries.begin(), spec.entries.end(),
                     [window](const Spectrum::Entry& e) {
                       return std::abs(e.winding) > window;
                     }),
      spec.entries.end());
  build_labels(spec);
  return spec;
}

int cz_index(const Spectrum& spectrum) {
  int best = 0;
  bool found = false;
  for (const auto& [k, tau] : spectrum.labels) {
    if (tau < kNegativeThreshold && (!found || k > best)) {
      best = k;
      found = true;
    }
  }
  if (!found) {
    throw WindowTooSmallError("no negative eigenvalue label inside the window");
  }
  auto next = spectrum.labels.find(best + 1);
  if (next == spectrum.labels.end() || next->second < kNegativeThreshold) {
    throw WindowTooSmallError(
        "largest negative label sits at the window edge; enlarge the window");
  }
  return best;
}

OrbitType classify_orbit(const LinearizedPath& path) {
  double tr = path.monodromy().trace();
  double band = 1e-8;
  if (std::abs(tr - 2.0) <= band) return OrbitType::kDegenerate;
  if (std::abs(tr + 2.0) <= band) return OrbitType::kNegativeHyperbolic;
  if (std::abs(tr) < 2.0) return OrbitType::kElliptic;
  return tr > 2.0 ? OrbitType::kPositiveHyperbolic
                  : OrbitType::kNegativeHyperbolic;
}

ActionIndexReport check_action_index(double T, int cz, double k_min,
                                     double k_max) {
  if (!(T > 0.0)) throw ParameterError("orbit action must be positive");
  ActionIndexReport rep;
  rep.T = T;
  rep.cz = cz;
  rep.k_min = k_min;
  rep.k_max = k_max;
  rep.upper_applicable = k_min >= 1.0;
  rep.lower_applicable = k_max <= 1.0;
  rep.scaled_applicable = k_min > 0.0;
  if (!rep.upper_applicable && !rep.lower_applicable && !rep.scaled_applicable) {
    throw InapplicableError(
        "no action-index hypothesis applies: K_min <= 0 and K_max > 1");
  }

  bool ok = true;
  if (rep.upper_applicable) {
    rep.upper_bound = kTwoPi * floor_div(cz + 1, 2);
    rep.upper_slack = rep.upper_bound - T;
    ok = ok && rep.upper_slack >= -1e-9;
  }
  if (rep.lower_applicable) {
    rep.lower_bound = kTwoPi * floor_div(cz, 2);
    rep.lower_slack = T - rep.lower_bound;
    ok = ok && rep.lower_slack >= -1e-9;
  }
  if (rep.scaled_applicable) {
    rep.scaled_bound = kTwoPi / std::sqrt(k_min) * floor_div(cz + 1, 2);
    rep.scaled_slack = rep.scaled_bound - T;
    ok = ok && rep.scaled_slack >= -1e-9;
  }
  rep.pass = ok;
  return rep;
}

}  // namespace cfl
