#include "cfl/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cfl {

namespace {

ChartPoint to_point(const Eigen::VectorXd& y, int chart_id) {
  ChartPoint p;
  p.chart_id = chart_id;
  p.coords = y.head<3>();
  return p;
}

Trajectory make_trajectory(const ContactModel&, const ChartPoint& p0,
                           OdeSolution&& sol, double T) {
  Trajectory traj;
  traj.sol = std::move(sol);
  traj.duration = T;
  traj.times = traj.sol.times;
  traj.points.reserve(traj.sol.states.size());
  for (const auto& s : traj.sol.states) {
    traj.points.push_back(to_point(s, p0.chart_id));
  }
  return traj;
}

}  // namespace

ChartPoint Trajectory::at(double t) const {
  return to_point(sol.at(t), points.front().chart_id);
}

Eigen::Matrix2d LinearizedPath::at(double t) const {
  Eigen::VectorXd s = sol.at(t);
  Eigen::Matrix2d m;
  m << s[0], s[2], s[1], s[3];
  return m;
}

Eigen::Vector2d LinearizedPath::particular(double t) const {
  return at(t) * Eigen::Vector2d(initial_a, initial_b);
}

ChartPoint wrap_to_chart(const ContactModel& model, const ChartPoint& p) {
  ChartPoint q = p;
  const ChartBox& box = model.chart();
  for (int c = 0; c < 3; ++c) {
    if (box[c].kind == CoordInterval::kPeriodic) {
      q.coords[c] = wrap_angle(q.coords[c]);
    }
  }
  return q;
}

Trajectory integrate_field(const ContactModel& model, FrameField f,
                           const ChartPoint& p0, double T, double tol) {
  model.require_inside(p0);
  OdeRhs rhs = [&model, f](double, const Eigen::VectorXd& y) -> Eigen::VectorXd {
    return model.field(f, to_point(y, 0));
  };
  OdeGuard guard = [&model](double, const Eigen::VectorXd& y) {
    return model.contains(to_point(y, 0));
  };
  OdeOptions opt;
  opt.rtol = tol;
  opt.atol = tol * 1e-3;
  OdeSolution sol = integrate_dopri5(rhs, 0.0, p0.coords, T, opt, guard);
  return make_trajectory(model, p0, std::move(sol), T);
}

Trajectory integrate_reeb(const ContactModel& model, const ChartPoint& p0,
                          double T, double tol) {
  return integrate_field(model, FrameField::R, p0, T, tol);
}

namespace {

LinearizedPath linearized_from_k(const std::function<double(double)>& K_of_t,
                                 double T, double a0, double b0, double tol) {
  OdeRhs rhs = [&K_of_t](double t, const Eigen::VectorXd& s) -> Eigen::VectorXd {
    double K = K_of_t(t);
    Eigen::VectorXd d(4);
    d << -K * s[1], s[0], -K * s[3], s[2];
    return d;
  };
  Eigen::VectorXd s0(4);
  s0 << 1.0, 0.0, 0.0, 1.0;
  OdeOptions opt;
  opt.rtol = tol;
  opt.atol = tol * 1e-3;
  LinearizedPath path;
  path.sol = integrate_dopri5(rhs, 0.0, s0, T, opt);
  path.duration = T;
  path.initial_a = a0;
  path.initial_b = b0;
  path.times = path.sol.times;
  path.matrices.reserve(path.sol.states.size());
  for (const auto& s : path.sol.states) {
    Eigen::Matrix2d m;
    m << s[0], s[2], s[1], s[3];
    path.matrices.push_back(m);
  }
  return path;
}

}  // namespace

LinearizedPath integrate_linearized(const ContactModel& model,
                                    const Trajectory& traj, double a0, double b0,
                                    double tol) {
  if (auto kc = model.constant_k()) {
    return linearized_from_k([kc](double) { return *kc; }, traj.duration, a0, b0,
                             tol);
  }
  auto K_of_t = [&model, &traj](double t) {
    return model.scalar(FrameScalar::K, traj.at(t));
  };
  return linearized_from_k(K_of_t, traj.duration, a0, b0, tol);
}

LinearizedPath integrate_linearized_constant(double K, double T, double a0,
                                             double b0, double tol) {
  return linearized_from_k([K](double) { return K; }, T, a0, b0, tol);
}

namespace {

struct ReturnEvent {
  double time = 0.0;
  ChartPoint point;
};

/// First crossing of the unwrapped section coordinate with a full 2*pi
/// advance (periodic coordinate) in the direction of the initial flow.
ReturnEvent section_return(const ContactModel& model, const ChartPoint& p0,
                           const Section& section, double horizon, double tol) {
  int c = section.coord;
  if (c < 0 || c > 2) throw ParameterError("section coordinate index out of range");
  model.require_inside(p0);
  double v0 = model.field(FrameField::R, p0)[c];
  if (std::abs(v0) < 1e-10) {
    throw NoReturnError("Reeb flow is not transverse to the section at the seed");
  }
  double dir = v0 > 0.0 ? 1.0 : -1.0;
  bool periodic = model.chart()[c].kind == CoordInterval::kPeriodic;
  double target = p0.coords[c] + (periodic ? dir * kTwoPi : 0.0);

  double chunk = 2.5 * kTwoPi;
  double t_base = 0.0;
  ChartPoint p = p0;
  bool left_start = periodic;  // non-periodic sections must first leave the plane
  while (t_base < horizon) {
    double span = std::min(chunk, horizon - t_base);
    Trajectory leg;
    try {
      leg = integrate_reeb(model, p, span, tol);
    } catch (const ChartExitError& e) {
      throw ChartExitError(e.what(), t_base + e.exit_time);
    }
    double prev_g = leg.points.front().coords[c] - target;
    for (std::size_t i = 1; i < leg.times.size(); ++i) {
      double g = leg.points[i].coords[c] - target;
      if (left_start && (g == 0.0 || (g > 0.0) != (prev_g > 0.0))) {
        double lo = leg.times[i - 1], hi = leg.times[i];
        bool pos_lo = prev_g > 0.0;
        for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
          double mid = 0.5 * (lo + hi);
          double gm = leg.at(mid).coords[c] - target;
          if ((gm > 0.0) == pos_lo) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        double t = 0.5 * (lo + hi);
        for (int it = 0; it < 3; ++it) {
          ChartPoint q = leg.at(t);
          double gq = q.coords[c] - target;
          double dg = model.field(FrameField::R, q)[c];
          if (std::abs(dg) < 1e-12) break;
          t -= gq / dg;
          t = std::clamp(t, leg.times.front(), leg.times.back());
        }
        ReturnEvent ev;
        ev.time = t_base + t;
        ev.point = leg.at(t);
        return ev;
      }
      if (!left_start && std::abs(g) > 1e-6) left_start = true;
      prev_g = g;
    }
    t_base += span;
    p = leg.final();
  }
  throw NoReturnError("no section crossing within horizon " +
                      std::to_string(horizon));
}

}  // namespace

double section_return_time(const ContactModel& model, const ChartPoint& p0,
                           const Section& section, double horizon, double tol) {
  return section_return(model, p0, section, horizon, tol).time;
}

ClosedOrbitDescriptor find_closed_orbit(const ContactModel& model,
                                        const ChartPoint& seed,
                                        const Section& section, double tol,
                                        double horizon) {
  int c = section.coord;
  int o1 = (c + 1) % 3, o2 = (c + 2) % 3;
  const ChartBox& box = model.chart();

  // The return map must be evaluated well below the acceptance threshold,
  // otherwise integration noise keeps the Newton residual pinned at tol.
  double eval_tol = std::min(1e-10, 0.01 * tol);
  auto residual = [&](const Eigen::Vector2d& q, ReturnEvent* ev_out) {
    ChartPoint p = seed;
    p.coords[o1] = q[0];
    p.coords[o2] = q[1];
    ReturnEvent ev = section_return(model, p, section, horizon, eval_tol);
    Eigen::Vector2d r;
    double d1 = ev.point.coords[o1] - q[0];
    double d2 = ev.point.coords[o2] - q[1];
    if (box[o1].kind == CoordInterval::kPeriodic) d1 = wrap_diff(d1);
    if (box[o2].kind == CoordInterval::kPeriodic) d2 = wrap_diff(d2);
    r << d1, d2;
    if (ev_out) *ev_out = ev;
    return r;
  };

  Eigen::Vector2d q(seed.coords[o1], seed.coords[o2]);
  ReturnEvent ev;
  Eigen::Vector2d r = residual(q, &ev);

  for (int iter = 0; iter < 25 && r.norm() >= tol; ++iter) {
    double delta = 1e-6;
    Eigen::Matrix2d Jm;
    for (int k = 0; k < 2; ++k) {
      Eigen::Vector2d qk = q;
      qk[k] += delta;
      Jm.col(k) = (residual(qk, nullptr) - r) / delta;
    }
    if (std::abs(Jm.determinant()) < 1e-14) {
      throw NonConvergenceError(
          "singular return-map Jacobian while refining closed orbit");
    }
    q -= Jm.fullPivLu().solve(r);
    r = residual(q, &ev);
  }
  if (r.norm() >= tol) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1e", tol);
    throw NonConvergenceError(
        std::string("closed-orbit refinement did not reach tolerance ") + buf);
  }

  ClosedOrbitDescriptor orbit;
  orbit.label = "found";
  orbit.initial_point = seed;
  orbit.initial_point.coords[o1] = q[0];
  orbit.initial_point.coords[o2] = q[1];
  orbit.period = ev.time;
  orbit.analytic = false;
  orbit.in_chart = true;
  return orbit;
}

double action(const ContactModel& model, const Trajectory& traj, double tol) {
  double T = traj.duration;
  if (T == 0.0) return 0.0;

  // Quadrature of lambda(gamma-dot) with the velocity taken from the
  // dense output, so the check is sensitive to integration drift.
  int n = 4096;
  double hfd = 1e-6 * std::max(1.0, std::abs(T));
  double lo = std::min(0.0, T), hi = std::max(0.0, T);
  auto integrand = [&](double t) {
    double tc = std::clamp(t, lo + hfd, hi - hfd);
    Eigen::Vector3d vel =
        (traj.sol.at(tc + hfd) - traj.sol.at(tc - hfd)) / (2.0 * hfd);
    ChartPoint pt = traj.at(tc);
    return model.contact_form_components(pt).dot(vel);
  };
  double h = T / n;
  double sum = integrand(0.0) + integrand(T);
  for (int i = 1; i < n; ++i) {
    sum += integrand(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  double quad = sum * h / 3.0;

  if (std::abs(quad - T) > 10.0 * tol) {
    throw SelfCheckError("action quadrature " + std::to_string(quad) +
                         " disagrees with elapsed time " + std::to_string(T));
  }
  return T;
}

ToponogovReport toponogov_check(const RevolutionModel& model, int n_seeds,
                                double tol) {
  ToponogovReport rep;

  int n_scan = 20000;
  double r_lo = 1e-4, r_hi = kPi - 1e-4;
  rep.k_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n_scan; ++i) {
    double r = r_lo + (r_hi - r_lo) * i / n_scan;
    rep.k_min = std::min(rep.k_min, model.gauss_k(r));
  }
  if (!(rep.k_min > 0.0)) {
    throw HypothesisError("Toponogov bound needs positive curvature; min K = " +
                          std::to_string(rep.k_min));
  }
  rep.bound = kTwoPi / std::sqrt(rep.k_min);

  for (const auto& orbit : model.known_orbits()) {
    rep.candidates.push_back(orbit);
  }
  Section section{1, 0.0};
  for (int i = 0; i < n_seeds; ++i) {
    double psi = kPi * (i + 0.5) / n_seeds;
    ChartPoint seed(kPi / 2.0, 0.0, psi);
    try {
      ClosedOrbitDescriptor orbit = find_closed_orbit(model, seed, section, tol);
      orbit.label = "shooting_" + std::to_string(i);
      rep.candidates.push_back(orbit);
    } catch (const NoReturnError&) {
    } catch (const NonConvergenceError&) {
    } catch (const ChartExitError&) {
    } catch (const DomainError&) {
    }
  }

  rep.l_min = std::numeric_limits<double>::infinity();
  for (const auto& orbit : rep.candidates) {
    rep.l_min = std::min(rep.l_min, orbit.period);
  }
  rep.slack = rep.bound - rep.l_min;
  rep.pass = rep.l_min <= rep.bound + 1e-9;
  return rep;
}

}  // namespace cfl
