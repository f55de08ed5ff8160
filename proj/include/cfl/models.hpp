#pragma once

#include "cfl/core.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cfl {

enum class FrameField { R, X1, X2 };
enum class FrameScalar { I, J, K };

const char* to_string(FrameField f);
const char* to_string(FrameScalar s);

/// One chart coordinate: unconstrained, an angle (period 2pi), or an
/// open interval (lo, hi).
struct CoordInterval {
  enum Kind { kFree, kPeriodic, kBounded };
  Kind kind = kFree;
  double lo = 0.0;
  double hi = 0.0;
};

using ChartBox = std::array<CoordInterval, 3>;

/// Default region used when drawing sample points; always contained in
/// the chart with margins away from coordinate singularities.
using SampleBox = std::array<std::array<double, 2>, 3>;

/// Frame data at one point: the three fields with a common base point
/// and the three structure scalars.
struct FrameSample {
  TangentVector R, X1, X2;
  double I = 0.0, J = 0.0, K = 0.0;

  /// Columns are the chart components of R, X1, X2.
  Eigen::Matrix3d frame_matrix() const;
};

/// A closed Reeb orbit a model knows in closed form, or one produced by
/// the orbit finder.
struct ClosedOrbitDescriptor {
  std::string label;
  ChartPoint initial_point;
  double period = 0.0;
  bool analytic = false;
  /// False for analytic orbits whose initial point sits on the chart
  /// closure (e.g. toric boundary circles).
  bool in_chart = true;
};

/// A contact 3-manifold presented in a single chart with closed-form
/// contact form, Reeb field, and (where available) the rest of the
/// canonical frame and its structure scalars I, J, K.
///
/// All evaluation methods are const and touch no shared mutable state,
/// so one instance may be used from many threads concurrently.
class ContactModel {
 public:
  virtual ~ContactModel() = default;

  const std::string& name() const { return name_; }
  const ChartBox& chart() const { return chart_; }
  const SampleBox& sample_box() const { return sample_; }
  virtual std::map<std::string, double> parameters() const { return {}; }

  bool contains(const ChartPoint& p) const;
  /// Throws DomainError when p is outside the open chart box.
  void require_inside(const ChartPoint& p) const;

  /// Whether X1, X2 and the scalars I, J are published in closed form.
  virtual bool has_frame_fields() const { return true; }
  /// Set when K is constant over the whole model (always known, even for
  /// models without frame fields).
  virtual std::optional<double> constant_k() const { return std::nullopt; }

  /// Chart components of R, X1, or X2 at p. Throws ModelError when the
  /// requested field is not published.
  virtual Eigen::Vector3d field(FrameField f, const ChartPoint& p) const = 0;
  /// I, J, or K at p. Throws ModelError when not published.
  virtual double scalar(FrameScalar s, const ChartPoint& p) const = 0;
  /// Covector components of the contact form at p (same coordinate
  /// basis as tangent components).
  virtual Eigen::Vector3d contact_form_components(const ChartPoint& p) const = 0;

  virtual std::vector<ClosedOrbitDescriptor> known_orbits() const { return {}; }

 protected:
  std::string name_;
  ChartBox chart_{};
  SampleBox sample_{};
};

using ModelPtr = std::shared_ptr<const ContactModel>;

/// Builds a catalog model from its name and parameter map.
///
/// Names and parameters:
///   darboux                  (none)
///   t3                       (none)
///   s3                       (none)
///   katok        a           rotation parameter, |a| < 1
///   revolution   c3          profile m(r) = sin r + c3 sin^3 r, |c3| < 1/3
///   ellipsoid    a, b        0 < a <= b
///   torus_bundle c, l        constant Itilde = c (|c| < 2), fiber period l > 0
///
/// Unknown names or invalid parameters raise ParameterError.
ModelPtr make_model(const std::string& name,
                    const std::map<std::string, double>& params = {});

/// Names accepted by make_model.
std::vector<std::string> model_catalog();

/// Full frame at p. Throws ModelError when the model publishes no frame
/// fields and DomainError when p is outside the chart.
FrameSample evaluate_frame(const ContactModel& model, const ChartPoint& p);

/// lambda(v) at v's base point.
double evaluate_contact_form(const ContactModel& model, const TangentVector& v);

/// Curvature constant of the ellipsoid E(a, b): 16 (pi (a+b) / (2ab))^2.
double ellipsoid_K(double a, double b);

/// Concrete models whose extra structure other modules use directly.

class RevolutionModel : public ContactModel {
 public:
  explicit RevolutionModel(double c3);
  bool has_frame_fields() const override { return true; }
  Eigen::Vector3d field(FrameField f, const ChartPoint& p) const override;
  double scalar(FrameScalar s, const ChartPoint& p) const override;
  Eigen::Vector3d contact_form_components(const ChartPoint& p) const override;
  std::vector<ClosedOrbitDescriptor> known_orbits() const override;
  std::map<std::string, double> parameters() const override;

  double c3() const { return c3_; }
  double m(double r) const;
  double dm(double r) const;
  double ddm(double r) const;
  /// Gauss curvature of the base surface, K(r) = -m''(r)/m(r).
  double gauss_k(double r) const;
  /// Radius of the equatorial parallel (m' = 0).
  double equator_r() const { return kPi / 2.0; }

 private:
  double c3_ = 0.0;
};

class EllipsoidModel : public ContactModel {
 public:
  EllipsoidModel(double a, double b);
  bool has_frame_fields() const override { return false; }
  std::optional<double> constant_k() const override { return k_; }
  Eigen::Vector3d field(FrameField f, const ChartPoint& p) const override;
  double scalar(FrameScalar s, const ChartPoint& p) const override;
  Eigen::Vector3d contact_form_components(const ChartPoint& p) const override;
  std::vector<ClosedOrbitDescriptor> known_orbits() const override;
  std::map<std::string, double> parameters() const override;

  double a() const { return a_; }
  double b() const { return b_; }

 private:
  double a_ = 0.0, b_ = 0.0, k_ = 0.0;
};

class KatokModel : public ContactModel {
 public:
  explicit KatokModel(double a);
  std::optional<double> constant_k() const override { return 1.0; }
  Eigen::Vector3d field(FrameField f, const ChartPoint& p) const override;
  double scalar(FrameScalar s, const ChartPoint& p) const override;
  Eigen::Vector3d contact_form_components(const ChartPoint& p) const override;
  std::vector<ClosedOrbitDescriptor> known_orbits() const override;
  std::map<std::string, double> parameters() const override;

  double a() const { return a_; }
  double rho(const ChartPoint& p) const;

 private:
  double a_ = 0.0;
};

class TorusBundleModel : public ContactModel {
 public:
  TorusBundleModel(double c, double l);
  std::optional<double> constant_k() const override { return 0.0; }
  Eigen::Vector3d field(FrameField f, const ChartPoint& p) const override;
  double scalar(FrameScalar s, const ChartPoint& p) const override;
  Eigen::Vector3d contact_form_components(const ChartPoint& p) const override;
  std::map<std::string, double> parameters() const override;

  double c() const { return c_; }
  double l() const { return l_; }

 private:
  double c_ = 0.0, l_ = 0.0, omega_ = 0.0;
};

}  // namespace cfl
