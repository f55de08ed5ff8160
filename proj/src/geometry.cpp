#include "cfl/geometry.hpp"

#include <cmath>

namespace cfl {

double metric(const ContactModel& model, const TangentVector& v,
              const TangentVector& w, const FDConfig& cfg) {
  const ChartPoint& p = v.base;
  FrameSample fs = evaluate_frame(model, p);

  Eigen::Vector3d w_frame = fs.frame_matrix().fullPivLu().solve(w.components);
  double a = w_frame[1], b = w_frame[2];
  TangentVector jw;
  jw.base = p;
  jw.components = b * fs.X1.components - a * fs.X2.components;

  double lam_v = model.contact_form_components(p).dot(v.components);
  double lam_w = model.contact_form_components(p).dot(w.components);
  return lam_v * lam_w + dlambda(model, v, jw, cfg).value;
}

ConnectionTable connection_table(const ContactModel& model, const ChartPoint& p,
                                 const FDConfig&) {
  FrameSample fs = evaluate_frame(model, p);
  double I = fs.I, J = fs.J, K = fs.K;

  ConnectionTable t;
  t.nabla[0][0] = {0.0, 0.0, 0.0};
  t.nabla[0][1] = {0.0, 0.0, K / 2.0};
  t.nabla[0][2] = {0.0, -K / 2.0, 0.0};
  t.nabla[1][0] = {0.0, 0.0, -K / 2.0};
  t.nabla[1][1] = {0.0, 0.0, -I};
  t.nabla[1][2] = {K / 2.0, I, 0.0};
  t.nabla[2][0] = {0.0, 1.0 - K / 2.0, 0.0};
  t.nabla[2][1] = {K / 2.0 - 1.0, 0.0, -J};
  t.nabla[2][2] = {0.0, J, 0.0};
  return t;
}

CurvatureSample curvature(const ContactModel& model, const ChartPoint& p,
                          const FDConfig& cfg) {
  FrameSample fs = evaluate_frame(model, p);
  double I = fs.I, J = fs.J, K = fs.K;

  DerivativeResult rK =
      directional_derivative(model, FrameField::R, FrameScalar::K, p, cfg);
  DerivativeResult x1K =
      directional_derivative(model, FrameField::X1, FrameScalar::K, p, cfg);
  DerivativeResult x2K =
      directional_derivative(model, FrameField::X2, FrameScalar::K, p, cfg);
  DerivativeResult x2I =
      directional_derivative(model, FrameField::X2, FrameScalar::I, p, cfg);
  DerivativeResult x1J =
      directional_derivative(model, FrameField::X1, FrameScalar::J, p, cfg);

  double RK = rK.value, X1K = x1K.value, X2K = x2K.value;
  double X2I = x2I.value, X1J = x1J.value;

  CurvatureSample s;
  s.derivative_error =
      std::max({rK.error_estimate, x1K.error_estimate, x2K.error_estimate,
                x2I.error_estimate, x1J.error_estimate});

  // Pair (R, X1).
  s.entries[0][0] = {0.0, 0.75 * K * K - K, -0.5 * RK};
  s.entries[0][1] = {-0.75 * K * K + K, 0.0, -J - 0.5 * X1K + K * J};
  s.entries[0][2] = {0.5 * RK, J + 0.5 * X1K - K * J, 0.0};
  // Pair (R, X2).
  s.entries[1][0] = {0.0, -0.5 * RK, -0.25 * K * K};
  s.entries[1][1] = {0.5 * RK, 0.0, I * (K - 1.0) + 0.5 * X2K};
  s.entries[1][2] = {0.25 * K * K, -I * (K - 1.0) - 0.5 * X2K, 0.0};
  // Pair (X1, X2).
  s.entries[2][0] = {0.0, -0.5 * X1K - J + K * J, -I + I * K + 0.5 * X2K};
  s.entries[2][1] = {0.5 * X1K - J * K + J, 0.0,
                     -0.25 * K * K + X2I - X1J + I * I + J * J};
  s.entries[2][2] = {-I * (K - 1.0) - 0.5 * X2K,
                     X1J - X2I + 0.25 * K * K - I * I - J * J, 0.0};

  s.sec[0] = -s.entries[0][0][1];
  s.sec[1] = -s.entries[1][0][2];
  s.sec[2] = -s.entries[2][1][2];
  return s;
}

namespace {

/// Frame coefficients of the numeric bracket [e_i, e_j] at q, for the
/// three ordered pairs; antisymmetric in (i, j).
using BracketTable = std::array<std::array<Eigen::Vector3d, 3>, 3>;
/// Koszul coefficients c[i][j][k] = <nabla_{e_i} e_j, e_k>.
using KoszulTable = std::array<std::array<Eigen::Vector3d, 3>, 3>;

BracketTable bracket_coefficients(const ContactModel& model, const ChartPoint& q,
                                  const FDConfig& cfg) {
  FrameSample fs = evaluate_frame(model, q);
  auto lu = fs.frame_matrix().fullPivLu();

  BracketTable A;
  for (auto& row : A) row.fill(Eigen::Vector3d::Zero());
  const std::array<FrameField, 3> fields = {FrameField::R, FrameField::X1,
                                            FrameField::X2};
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      Eigen::Vector3d br =
          lie_bracket(model, fields[i], fields[j], q, cfg).vector.components;
      Eigen::Vector3d coeff = lu.solve(br);
      A[i][j] = coeff;
      A[j][i] = -coeff;
    }
  }
  return A;
}

KoszulTable koszul_coefficients(const BracketTable& A) {
  KoszulTable c;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        c[i][j][k] = 0.5 * (A[i][j][k] - A[j][k][i] + A[k][i][j]);
      }
    }
  }
  return c;
}

}  // namespace

CurvatureSample curvature_numeric_oracle(const ContactModel& model,
                                         const ChartPoint& p,
                                         const FDConfig& cfg) {
  FrameSample fs = evaluate_frame(model, p);

  // The Koszul reduction below assumes the frame is orthonormal for the
  // contact metric; check it against the numeric metric first.
  std::array<TangentVector, 3> e = {fs.R, fs.X1, fs.X2};
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      double g = metric(model, e[i], e[j], cfg);
      double expect = i == j ? 1.0 : 0.0;
      if (std::abs(g - expect) > 1e-6) {
        throw SelfCheckError("frame fails numeric orthonormality at g(" +
                             std::to_string(i) + "," + std::to_string(j) +
                             ") = " + std::to_string(g));
      }
    }
  }

  BracketTable A = bracket_coefficients(model, p, cfg);
  KoszulTable c = koszul_coefficients(A);

  // Outer derivatives e_i(c_{jk}^m): plain central differences along the
  // frozen frame directions at two step sizes, one Richardson pass.
  double h_out = 1e-2;
  std::array<Eigen::Vector3d, 3> dirs = {fs.R.components, fs.X1.components,
                                         fs.X2.components};
  std::array<std::array<std::array<Eigen::Vector3d, 3>, 3>, 3> dc;
  for (int i = 0; i < 3; ++i) {
    auto table_at = [&](double s) {
      ChartPoint q = p;
      q.coords += s * dirs[i];
      return koszul_coefficients(bracket_coefficients(model, q, cfg));
    };
    KoszulTable cp = table_at(h_out), cm = table_at(-h_out);
    KoszulTable cp2 = table_at(h_out / 2.0), cm2 = table_at(-h_out / 2.0);
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        Eigen::Vector3d d1 = (cp[j][k] - cm[j][k]) / (2.0 * h_out);
        Eigen::Vector3d d2 = (cp2[j][k] - cm2[j][k]) / h_out;
        dc[i][j][k] = (4.0 * d2 - d1) / 3.0;
      }
    }
  }

  auto riemann = [&](int i, int j, int k) {
    Eigen::Vector3d r = dc[i][j][k] - dc[j][i][k];
    for (int n = 0; n < 3; ++n) {
      r += c[j][k][n] * c[i][n] - c[i][k][n] * c[j][n] - A[i][j][n] * c[n][k];
    }
    return r;
  };

  CurvatureSample s;
  const std::array<std::array<int, 2>, 3> pairs = {{{0, 1}, {0, 2}, {1, 2}}};
  for (int pidx = 0; pidx < 3; ++pidx) {
    int i = pairs[pidx][0], j = pairs[pidx][1];
    for (int k = 0; k < 3; ++k) {
      s.entries[pidx][k] = riemann(i, j, k);
    }
    s.sec[pidx] = -s.entries[pidx][i][j];
  }
  return s;
}

}  // namespace cfl
