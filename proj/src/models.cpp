#include "cfl/models.hpp"

#include <cmath>
#include <sstream>

namespace cfl {

namespace {

constexpr double kPoleMargin = 1e-3;

CoordInterval free_coord() { return {CoordInterval::kFree, 0.0, 0.0}; }
CoordInterval periodic_coord() { return {CoordInterval::kPeriodic, 0.0, kTwoPi}; }
CoordInterval bounded_coord(double lo, double hi) {
  return {CoordInterval::kBounded, lo, hi};
}

std::string format_point(const ChartPoint& p) {
  std::ostringstream os;
  os << "(" << p.coords[0] << ", " << p.coords[1] << ", " << p.coords[2] << ")";
  return os.str();
}

double get_param(const std::map<std::string, double>& params, const std::string& key,
                 double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void reject_unknown_params(const std::string& model,
                           const std::map<std::string, double>& params,
                           std::initializer_list<const char*> known) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* k : known) {
      if (key == k) ok = true;
    }
    if (!ok) {
      throw ParameterError("model '" + model + "' does not take parameter '" + key + "'");
    }
  }
}

}  // namespace

const char* to_string(FrameField f) {
  switch (f) {
    case FrameField::R: return "R";
    case FrameField::X1: return "X1";
    case FrameField::X2: return "X2";
  }
  return "?";
}

const char* to_string(FrameScalar s) {
  switch (s) {
    case FrameScalar::I: return "I";
    case FrameScalar::J: return "J";
    case FrameScalar::K: return "K";
  }
  return "?";
}

Eigen::Matrix3d FrameSample::frame_matrix() const {
  Eigen::Matrix3d m;
  m.col(0) = R.components;
  m.col(1) = X1.components;
  m.col(2) = X2.components;
  return m;
}

bool ContactModel::contains(const ChartPoint& p) const {
  if (p.chart_id != 0) return false;
  for (int c = 0; c < 3; ++c) {
    const CoordInterval& iv = chart_[c];
    if (iv.kind == CoordInterval::kBounded &&
        !(p.coords[c] > iv.lo && p.coords[c] < iv.hi)) {
      return false;
    }
  }
  return true;
}

void ContactModel::require_inside(const ChartPoint& p) const {
  if (!contains(p)) {
    throw DomainError("point " + format_point(p) + " outside the chart of model '" +
                      name_ + "'");
  }
}

FrameSample evaluate_frame(const ContactModel& model, const ChartPoint& p) {
  model.require_inside(p);
  if (!model.has_frame_fields()) {
    throw ModelError("model '" + model.name() +
                     "' publishes no closed-form frame fields");
  }
  FrameSample s;
  s.R = {p, model.field(FrameField::R, p)};
  s.X1 = {p, model.field(FrameField::X1, p)};
  s.X2 = {p, model.field(FrameField::X2, p)};
  s.I = model.scalar(FrameScalar::I, p);
  s.J = model.scalar(FrameScalar::J, p);
  s.K = model.scalar(FrameScalar::K, p);
  return s;
}

double evaluate_contact_form(const ContactModel& model, const TangentVector& v) {
  model.require_inside(v.base);
  return model.contact_form_components(v.base).dot(v.components);
}

double ellipsoid_K(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw ParameterError("ellipsoid axes must be positive");
  }
  double r = kPi * (a + b) / (2.0 * a * b);
  return 16.0 * r * r;
}

//---------------------------------------------------------------------------
// Darboux chart on R^3: lambda = dz + y dx.

namespace {

class DarbouxModel : public ContactModel {
 public:
  DarbouxModel() {
    name_ = "darboux";
    chart_ = {free_coord(), free_coord(), free_coord()};
    sample_ = {{{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}};
  }

  Eigen::Vector3d field(FrameField f, const ChartPoint& p) const override {
    double y = p.coords[1], z = p.coords[2];
    switch (f) {
      case FrameField::R: return {0.0, 0.0, 1.0};
      case FrameField::X1: return {1.0, 0.0, -y};
      case FrameField::X2: return {-z, 1.0, y * z};
    }
    return Eigen::Vector3d::Zero();
  }

  double scalar(FrameScalar s, const ChartPoint& p) const override {
    return s == FrameScalar::I ? p.coords[1] : 0.0;
  }

  Eigen::Vector3d contact_form_components(const ChartPoint& p) const override {
    return {p.coords[1], 0.0, 1.0};
  }
};

//---------------------------------------------------------------------------
// Flat torus T^3, coordinates (theta, x, y): lambda = cos(theta) dx + sin(theta) dy.

class T3Model : public ContactModel {
 public:
  T3Model() {
    name_ = "t3";
    chart_ = {periodic_coord(), periodic_coord(), periodic_coord()};
    sample_ = {{{0.0, kTwoPi}, {0.0, kTwoPi}, {0.0, kTwoPi}}};
  }

  std::optional<double> constant_k() const override { return 0.0; }

  Eigen::Vector3d field(FrameField f, const ChartPoint& p) const override {
    double th = p.coords[0];
    switch (f) {
      case FrameField::R: return {0.0, std::cos(th), std::sin(th)};
      case FrameField::X1: return {0.0, -std::sin(th), std::cos(th)};
      case FrameField::X2: return {1.0, 0.0, 0.0};
    }
    return Eigen::Vector3d::Zero();
  }

  double scalar(FrameScalar, const ChartPoint&) const override { return 0.0; }

  Eigen::Vector3d contact_form_components(const ChartPoint& p) const override {
    return {0.0, std::cos(p.coords[0]), std::sin(p.coords[0])};
  }

  std::vector<ClosedOrbitDescriptor> known_orbits() const override {
    return {{"x_line", ChartPoint(0.0, 0.0, 0.0), kTwoPi, true, true}};
  }
};

//---------------------------------------------------------------------------
// Round S^3 in coordinates (eta, phi1, phi2):
//   embedding (cos eta e^{i phi1}, sin eta e^{i phi2}) in C^2,
//   lambda = cos^2(eta) dphi1 - sin^2(eta) dphi2.
// The frame rotates in phi1 - phi2; I = J = 0, K = 4.

class S3Model : public ContactModel {
 public:
  S3Model() {
    name_ = "s3";
    chart_ = {bounded_coord(kPoleMargin, kPi / 2.0 - kPoleMargin), periodic_coord(),
              periodic_coord()};
    sample_ = {{{0.25, kPi / 2.0 - 0.25}, {0.0, kTwoPi}, {0.0, kTwoPi}}};
  }

  std::optional<double> constant_k() const override { return 4.0; }

  Eigen::Vector3d field(FrameField f, const ChartPoint& p) const override {
    double eta = p.coords[0];
    double d = p.coords[1] - p.coords[2];
    double tn = std::tan(eta), ct = 1.0 / tn;
    switch (f) {
      case FrameField::R:
        return {0.0, 1.0, -1.0};
      case FrameField::X1:
        return {std::cos(d), tn * std::sin(d), ct * std::sin(d)};
      case FrameField::X2:
        return {-0.5 * std::sin(d), 0.5 * tn * std::cos(d), 0.5 * ct * std::cos(d)};
    }
    return Eigen::Vector3d::Zero();
  }

  double scalar(FrameScalar s, const ChartPoint&) const override {
    return s == FrameScalar::K ? 4.0 : 0.0;
  }

  Eigen::Vector3d contact_form_components(const ChartPoint& p) const override {
    double c = std::cos(p.coords[0]), s = std::sin(p.coords[0]);
    return {0.0, c * c, -s * s};
  }

  std::vector<ClosedOrbitDescriptor> known_orbits() const override {
    return {{"hopf_fiber", ChartPoint(0.7, 0.0, 0.0), kTwoPi, true, true}};
  }
};

}  // namespace

//---------------------------------------------------------------------------
// Katok family on the unit tangent bundle of S^2, coordinates (r, theta, psi),
// rho = 1 + a sin(r) sin(psi). The chart excludes the poles.

KatokModel::KatokModel(double a) : a_(a) {
  if (!(std::abs(a) < 1.0)) {
    throw ParameterError("katok parameter requires |a| < 1");
  }
  name_ = "katok";
  chart_ = {bounded_coord(kPoleMargin, kPi - kPoleMargin), periodic_coord(),
            periodic_coord()};
  sample_ = {{{0.3, kPi - 0.3}, {0.0, kTwoPi}, {0.0, kTwoPi}}};
}

double KatokModel::rho(const ChartPoint& p) const {
  return 1.0 + a_ * std::sin(p.coords[0]) * std::sin(p.coords[2]);
}

Eigen::Vector3d KatokModel::field(FrameField f, const ChartPoint& p) const {
  double r = p.coords[0], psi = p.coords[2];
  double sr = std::sin(r), cr = std::cos(r);
  double sp = std::sin(psi), cp = std::cos(psi);
  double sq = std::sqrt(rho(p));
  switch (f) {
    case FrameField::R:
      return {cp, sp / sr + a_, -cr / sr * sp};
    case FrameField::X1:
      return {-sq * sp, sq * cp / sr, -sq * cr / sr * cp};
    case FrameField::X2:
      return {0.0, 0.0, sq};
  }
  return Eigen::Vector3d::Zero();
}

double KatokModel::scalar(FrameScalar s, const ChartPoint& p) const {
  double r = p.coords[0], psi = p.coords[2];
  double sq = std::sqrt(rho(p));
  switch (s) {
    case FrameScalar::I: return -1.5 * a_ * std::sin(r) * std::cos(psi) / sq;
    case FrameScalar::J: return -1.5 * a_ * std::cos(r) / sq;
    case FrameScalar::K: return 1.0;
  }
  return 0.0;
}

Eigen::Vector3d KatokModel::contact_form_components(const ChartPoint& p) const {
  double r = p.coords[0], psi = p.coords[2];
  double rh = rho(p);
  return {std::cos(psi) / rh, std::sin(r) * std::sin(psi) / rh, 0.0};
}

std::vector<ClosedOrbitDescriptor> KatokModel::known_orbits() const {
  std::vector<ClosedOrbitDescriptor> orbits;
  orbits.push_back({"short", ChartPoint(kPi / 2.0, 0.0, kPi / 2.0),
                    kTwoPi / (1.0 + a_), true, true});
  orbits.push_back({"long", ChartPoint(kPi / 2.0, 0.0, -kPi / 2.0 + kTwoPi),
                    kTwoPi / (1.0 - a_), true, true});
  return orbits;
}

std::map<std::string, double> KatokModel::parameters() const { return {{"a", a_}}; }

//---------------------------------------------------------------------------
// Unit tangent bundle of a surface of revolution with profile
// m(r) = sin r + c3 sin^3 r, coordinates (r, theta, psi).

RevolutionModel::RevolutionModel(double c3) : c3_(c3) {
  if (!(std::abs(c3) < 1.0 / 3.0)) {
    throw ParameterError("revolution profile requires |c3| < 1/3 so the equator is unique");
  }
  name_ = "revolution";
  chart_ = {bounded_coord(kPoleMargin, kPi - kPoleMargin), periodic_coord(),
            periodic_coord()};
  sample_ = {{{0.3, kPi - 0.3}, {0.0, kTwoPi}, {0.0, kTwoPi}}};
}

double RevolutionModel::m(double r) const {
  double s = std::sin(r);
  return s + c3_ * s * s * s;
}

double RevolutionModel::dm(double r) const {
  double s = std::sin(r);
  return std::cos(r) * (1.0 + 3.0 * c3_ * s * s);
}

double RevolutionModel::ddm(double r) const {
  double s = std::sin(r);
  return -s + 3.0 * c3_ * s * (2.0 - 3.0 * s * s);
}

double RevolutionModel::gauss_k(double r) const { return -ddm(r) / m(r); }

Eigen::Vector3d RevolutionModel::field(FrameField f, const ChartPoint& p) const {
  double r = p.coords[0], psi = p.coords[2];
  double sp = std::sin(psi), cp = std::cos(psi);
  double mv = m(r), mp = dm(r);
  switch (f) {
    case FrameField::R: return {cp, sp / mv, -mp / mv * sp};
    case FrameField::X1: return {-sp, cp / mv, -mp / mv * cp};
    case FrameField::X2: return {0.0, 0.0, 1.0};
  }
  return Eigen::Vector3d::Zero();
}

double RevolutionModel::scalar(FrameScalar s, const ChartPoint& p) const {
  return s == FrameScalar::K ? gauss_k(p.coords[0]) : 0.0;
}

Eigen::Vector3d RevolutionModel::contact_form_components(const ChartPoint& p) const {
  double psi = p.coords[2];
  return {std::cos(psi), m(p.coords[0]) * std::sin(psi), 0.0};
}

std::vector<ClosedOrbitDescriptor> RevolutionModel::known_orbits() const {
  std::vector<ClosedOrbitDescriptor> orbits;
  double req = equator_r();
  orbits.push_back({"equator", ChartPoint(req, 0.0, kPi / 2.0),
                    kTwoPi * m(req), true, true});
  // Meridian geodesic through both poles; leaves the chart, so it is
  // published analytically: length = 2 * (r-range) = 2 pi.
  orbits.push_back({"meridian", ChartPoint(kPi / 2.0, 0.0, 0.0), kTwoPi, true, false});
  return orbits;
}

std::map<std::string, double> RevolutionModel::parameters() const {
  return {{"c3", c3_}};
}

//---------------------------------------------------------------------------
// Ellipsoid E(a, b) in toric coordinates (t, theta1, theta2) with the linear
// profile f(t) = b (1 - t/a). Only the contact form, the Reeb field, and the
// constant K are published; frame-level data is delegated to the Katok cover.

EllipsoidModel::EllipsoidModel(double a, double b) : a_(a), b_(b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw ParameterError("ellipsoid axes must be positive");
  }
  if (a > b) {
    throw ParameterError("ellipsoid expects a <= b");
  }
  k_ = ellipsoid_K(a, b);
  name_ = "ellipsoid";
  chart_ = {bounded_coord(0.0, a), periodic_coord(), periodic_coord()};
  sample_ = {{{0.05 * a, 0.95 * a}, {0.0, kTwoPi}, {0.0, kTwoPi}}};
}

Eigen::Vector3d EllipsoidModel::field(FrameField f, const ChartPoint& p) const {
  if (f != FrameField::R) {
    throw ModelError(
        "ellipsoid publishes only the Reeb field; frame data is delegated to the "
        "Katok cover");
  }
  require_inside(p);
  // f(t) = b - (b/a) t, u = 2 pi / (f - t f') = 2 pi / b.
  double u = kTwoPi / b_;
  return {0.0, u * b_ / a_, u};
}

double EllipsoidModel::scalar(FrameScalar s, const ChartPoint&) const {
  if (s != FrameScalar::K) {
    throw ModelError("ellipsoid publishes no I or J; delegated to the Katok cover");
  }
  return k_;
}

Eigen::Vector3d EllipsoidModel::contact_form_components(const ChartPoint& p) const {
  double t = p.coords[0];
  double ft = b_ * (1.0 - t / a_);
  return {0.0, t / kTwoPi, ft / kTwoPi};
}

std::vector<ClosedOrbitDescriptor> EllipsoidModel::known_orbits() const {
  std::vector<ClosedOrbitDescriptor> orbits;
  // Exceptional fibers at the interval endpoints; their initial points sit on
  // the chart closure, so they are flagged not-in-chart.
  orbits.push_back({"gamma_plus", ChartPoint(a_, 0.0, 0.0), a_, true, false});
  orbits.push_back({"gamma_minus", ChartPoint(0.0, 0.0, 0.0), b_, true, false});
  return orbits;
}

std::map<std::string, double> EllipsoidModel::parameters() const {
  return {{"a", a_}, {"b", b_}};
}

//---------------------------------------------------------------------------
// Flat-fiber torus bundle with constant Itilde = c, coordinates (theta, x, y).
// R and X1 translate the fiber with theta-dependent coefficients built from
// solutions of u'' + c u' + u = 0; X2 = d/dtheta. I = c, J = K = 0.

TorusBundleModel::TorusBundleModel(double c, double l) : c_(c), l_(l) {
  if (!(std::abs(c) < 2.0)) {
    throw ParameterError("torus_bundle requires |c| < 2 for oscillatory fiber fields");
  }
  if (!(l > 0.0)) {
    throw ParameterError("torus_bundle period l must be positive");
  }
  omega_ = std::sqrt(1.0 - 0.25 * c * c);
  name_ = "torus_bundle";
  chart_ = {free_coord(), periodic_coord(), periodic_coord()};
  sample_ = {{{0.0, l}, {0.0, kTwoPi}, {0.0, kTwoPi}}};
}

Eigen::Vector3d TorusBundleModel::field(FrameField f, const ChartPoint& p) const {
  double th = p.coords[0];
  double e = std::exp(-0.5 * c_ * th);
  double cw = std::cos(omega_ * th), sw = std::sin(omega_ * th);
  switch (f) {
    case FrameField::R:
      return {0.0, e * cw, e * sw};
    case FrameField::X1:
      return {0.0, e * (-0.5 * c_ * cw - omega_ * sw),
              e * (-0.5 * c_ * sw + omega_ * cw)};
    case FrameField::X2:
      return {1.0, 0.0, 0.0};
  }
  return Eigen::Vector3d::Zero();
}

double TorusBundleModel::scalar(FrameScalar s, const ChartPoint&) const {
  return s == FrameScalar::I ? c_ : 0.0;
}

Eigen::Vector3d TorusBundleModel::contact_form_components(const ChartPoint& p) const {
  double th = p.coords[0];
  double e = std::exp(-0.5 * c_ * th);
  double cw = std::cos(omega_ * th), sw = std::sin(omega_ * th);
  double a1p = e * (-0.5 * c_ * cw - omega_ * sw);
  double a2p = e * (-0.5 * c_ * sw + omega_ * cw);
  double w = omega_ * std::exp(-c_ * th);
  return {0.0, a2p / w, -a1p / w};
}

std::map<std::string, double> TorusBundleModel::parameters() const {
  return {{"c", c_}, {"l", l_}};
}

//---------------------------------------------------------------------------

ModelPtr make_model(const std::string& name,
                    const std::map<std::string, double>& params) {
  if (name == "darboux") {
    reject_unknown_params(name, params, {});
    return std::make_shared<DarbouxModel>();
  }
  if (name == "t3") {
    reject_unknown_params(name, params, {});
    return std::make_shared<T3Model>();
  }
  if (name == "s3") {
    reject_unknown_params(name, params, {});
    return std::make_shared<S3Model>();
  }
  if (name == "katok") {
    reject_unknown_params(name, params, {"a"});
    return std::make_shared<KatokModel>(get_param(params, "a", 0.0));
  }
  if (name == "revolution") {
    reject_unknown_params(name, params, {"c3"});
    return std::make_shared<RevolutionModel>(get_param(params, "c3", 0.0));
  }
  if (name == "ellipsoid") {
    reject_unknown_params(name, params, {"a", "b"});
    return std::make_shared<EllipsoidModel>(get_param(params, "a", 1.0),
                                            get_param(params, "b", 1.0));
  }
  if (name == "torus_bundle") {
    reject_unknown_params(name, params, {"c", "l"});
    return std::make_shared<TorusBundleModel>(get_param(params, "c", 0.0),
                                              get_param(params, "l", kTwoPi));
  }
  throw ParameterError("unknown model '" + name + "'");
}

std::vector<std::string> model_catalog() {
  return {"darboux", "t3", "s3", "katok", "revolution", "ellipsoid", "torus_bundle"};
}

}  // namespace cfl
