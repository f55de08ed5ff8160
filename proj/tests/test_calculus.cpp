#include "doctest.h"

#include "cfl/calculus.hpp"
#include "cfl/sampling.hpp"

#include <cmath>

using namespace cfl;

namespace {


double residual_norm(const Eigen::Vector3d& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("calculus") {

TEST_CASE("config validation") {
  FDConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.h = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg.h = 1e-4;
  cfg.refinement_levels = 1;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg.refinement_levels = 3;
  cfg.h_min = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
}

TEST_CASE("line derivative matches an analytic directional derivative") {
  auto model = make_model("darboux");
  ScalarField f = [](const ChartPoint& p) {
    return std::sin(p.coords[0]) * std::cos(p.coords[1]) + p.coords[2] * p.coords[2];
  };
  ChartPoint p(0.3, 0.7, 0.2);
  Eigen::Vector3d dir(1.0, -2.0, 0.5);
  double exact = std::cos(0.3) * std::cos(0.7) * 1.0 +
                 std::sin(0.3) * std::sin(0.7) * 2.0 + 2.0 * 0.2 * 0.5;
  auto r = line_derivative(*model, f, p, dir);
  CHECK(r.value == doctest::Approx(exact).epsilon(1e-10));
  CHECK(std::abs(r.value - exact) < std::max(50.0 * r.error_estimate, 1e-11));
  CHECK(r.h_used > 0.0);
}

TEST_CASE("plain central differences converge at second order") {
  auto model = make_model("darboux");
  ScalarField f = [](const ChartPoint& p) { return std::sin(p.coords[0]); };
  ChartPoint p(0.5, 0.0, 0.0);
  Eigen::Vector3d dir(1.0, 0.0, 0.0);
  double exact = std::cos(0.5);

  FDConfig coarse;
  coarse.h = 2e-3;
  coarse.richardson = false;
  coarse.refinement_levels = 2;
  FDConfig fine = coarse;
  fine.h = 1e-3;

  double ec = std::abs(line_derivative(*model, f, p, dir, coarse).value - exact);
  double ef = std::abs(line_derivative(*model, f, p, dir, fine).value - exact);
  CHECK(ec / ef == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("richardson extrapolation beats the plain estimate") {
  auto model = make_model("darboux");
  ScalarField f = [](const ChartPoint& p) { return std::exp(p.coords[0]); };
  ChartPoint p(0.4, 0.0, 0.0);
  Eigen::Vector3d dir(1.0, 0.0, 0.0);
  double exact = std::exp(0.4);

  FDConfig plain;
  plain.h = 1e-3;
  plain.richardson = false;
  FDConfig rich = plain;
  rich.richardson = true;

  double ep = std::abs(line_derivative(*model, f, p, dir, plain).value - exact);
  double er = std::abs(line_derivative(*model, f, p, dir, rich).value - exact);
  CHECK(er < ep);
  CHECK(er < 1e-11);
}

TEST_CASE("named directional derivatives hit closed forms") {
  auto darboux = make_model("darboux");
  ChartPoint p(0.2, 0.8, 0.5);
  auto x2_of_i = directional_derivative(*darboux, FrameField::X2, FrameScalar::I, p);
  CHECK(x2_of_i.value == doctest::Approx(1.0).epsilon(1e-9));
  auto r_of_i = directional_derivative(*darboux, FrameField::R, FrameScalar::I, p);
  CHECK(std::abs(r_of_i.value) < 1e-9);
}

TEST_CASE("katok jacobi scalar relation holds pointwise") {
  auto model = make_model("katok", {{"a", 0.5}});
  for (const auto& p : stratified_points(*model, 10, 3)) {
    auto lhs = directional_derivative(*model, FrameField::R, FrameScalar::I, p);
    double j = model->scalar(FrameScalar::J, p);
    CHECK(lhs.value == doctest::Approx(j).epsilon(5e-8));
  }
}

TEST_CASE("frame bracket [X2, R] recovers X1") {
  for (const auto& name : {"t3", "s3"}) {
    auto model = make_model(name);
    std::string label_ = name; CAPTURE(label_);
    for (const auto& p : stratified_points(*model, 8, 17)) {
      auto br = lie_bracket(*model, FrameField::X2, FrameField::R, p);
      Eigen::Vector3d x1 = model->field(FrameField::X1, p);
      CHECK(residual_norm(br.vector.components - x1) < 1e-8);
    }
  }
}

TEST_CASE("generic and named brackets agree") {
  auto model = make_model("katok", {{"a", 0.3}});
  ChartPoint p(1.2, 0.5, 0.9);
  VectorField V = frame_field_function(*model, FrameField::X1);
  VectorField W = frame_field_function(*model, FrameField::X2);
  auto generic = lie_bracket(*model, V, W, p);
  auto named = lie_bracket(*model, FrameField::X1, FrameField::X2, p);
  CHECK(residual_norm(generic.vector.components - named.vector.components) < 1e-12);
}

TEST_CASE("dlambda is antisymmetric and annihilated by R") {
  auto model = make_model("darboux");
  ChartPoint p(0.1, 0.6, 0.3);
  TangentVector v{p, Eigen::Vector3d(1.0, 0.0, 0.0)};
  TangentVector w{p, Eigen::Vector3d(0.0, 1.0, 0.0)};
  auto vw = dlambda(*model, v, w);
  auto wv = dlambda(*model, w, v);
  CHECK(vw.value == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(vw.value == doctest::Approx(-wv.value));
  TangentVector r{p, model->field(FrameField::R, p)};
  CHECK(std::abs(dlambda(*model, r, w).value) < 1e-9);
  CHECK(std::abs(dlambda(*model, r, v).value) < 1e-9);
}

TEST_CASE("dlambda pairs the contact frame to the area normalization") {
  for (const auto& name : {"t3", "katok", "s3"}) {
    auto model = name == std::string("katok") ? make_model(name, {{"a", 0.4}})
                                              : make_model(name);
    std::string label = name;
    CAPTURE(label);
    for (const auto& p : stratified_points(*model, 6, 29)) {
      TangentVector x1{p, model->field(FrameField::X1, p)};
      TangentVector x2{p, model->field(FrameField::X2, p)};
      CHECK(dlambda(*model, x2, x1).value == doctest::Approx(1.0).epsilon(1e-7));
    }
  }
}

TEST_CASE("stencils shrink near chart boundaries and fail below the floor") {
  auto model = make_model("katok");
  ScalarField f = [](const ChartPoint& p) { return std::cos(p.coords[0]); };
  Eigen::Vector3d dir(1.0, 0.0, 0.0);

  ChartPoint near_edge(1e-3 + 5e-5, 0.0, 0.0);
  auto r = line_derivative(*model, f, near_edge, dir);
  CHECK(r.h_used < 1e-4);
  CHECK(r.value == doctest::Approx(-std::sin(near_edge.coords[0])).epsilon(1e-5));

  ChartPoint too_close(1e-3 + 1e-9, 0.0, 0.0);
  CHECK_THROWS_AS(line_derivative(*model, f, too_close, dir), DomainError);
  CHECK_THROWS_AS(line_derivative(*model, f, ChartPoint(kPi + 1.0, 0.0, 0.0), dir),
                  DomainError);
}

}  // TEST_SUITE("calculus")
