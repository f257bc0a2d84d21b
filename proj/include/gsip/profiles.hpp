#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace gsip {

using RealFunction = std::function<double(double)>;

/// Open interval (lo, hi); either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const { return x > lo && x < hi; }
  bool bounded() const;
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class ProfileKind { Constant, InverseLinear, SechLike, LinearScaled, Custom };

/// An interior point of `domain`: 0 when inside, else a point near the finite edge.
double default_reference_point(const Interval& domain);

/// The profile U(x) of the factorization A = U d/dx + W, with 1/(2m) = U^2.
///
/// Built-in kinds carry analytic derivatives, Y(x) = int dx/U and its
/// inverse. Custom profiles differentiate numerically and integrate Y by
/// adaptive quadrature from the reference point.
class MassProfile {
 public:
  static MassProfile constant(double value);
  /// U = c / x on (0, inf); Y = x^2 / (2c).
  static MassProfile inverse_linear(double c);
  /// U = 1 / cosh x on the real line; Y = sinh x.
  static MassProfile sech_like();
  /// U = s x on (0, inf); Y = ln(x) / s.
  static MassProfile linear_scaled(double s);
  /// Arbitrary U on `domain`; `y_eval`, when given, must satisfy Y' = 1/U.
  static MassProfile custom(RealFunction u_eval, Interval domain,
                            std::optional<RealFunction> y_eval = std::nullopt);

  /// Looks up a built-in profile by its config name ("constant",
  /// "inverse-linear", "sech-mass", "linear"). `parameter` is U0, c or s;
  /// ignored for "sech-mass".
  static MassProfile from_name(std::string_view name, double parameter);

  ProfileKind kind() const { return kind_; }
  std::string_view name() const;
  /// U0, c or s depending on the kind; 0 for sech-mass and custom.
  double parameter() const { return parameter_; }
  const Interval& domain() const { return domain_; }
  double reference_point() const { return x_ref_; }
  /// True when Y increases with x, i.e. U > 0 on the domain.
  bool y_increasing() const { return u(default_reference_point(domain_)) > 0; }

  double u(double x) const;
  double u_prime(double x) const;
  double u_double_prime(double x) const;

  /// Y(x) from the analytic closed form when available, else quadrature.
  double y(double x) const;
  /// Y(x) through adaptive quadrature of 1/U from the reference point.
  double y_by_quadrature(double x) const;
  /// Solves Y(x) = target inside the domain (analytic inverse or bisection).
  double y_inverse(double target) const;
  /// Limits of Y at the two domain edges (may be infinite).
  Interval y_range() const;

  bool has_analytic_y() const { return static_cast<bool>(y_eval_); }

 private:
  MassProfile() = default;
  void require_in_domain(double x) const;

  ProfileKind kind_ = ProfileKind::Custom;
  double parameter_ = 0.0;
  Interval domain_;
  double x_ref_ = 0.0;
  RealFunction u_;
  RealFunction u_prime_;
  RealFunction u_double_prime_;
  RealFunction y_eval_;
  RealFunction y_inverse_;
  std::optional<Interval> y_range_;
};

/// m(x) = 1 / (2 U(x)^2).
double eval_mass(const MassProfile& profile, double x);
double eval_Y(const MassProfile& profile, double x);
/// Mass-induced offset V0 = -U'^2/4 - U U''/2.
double eval_V0(const MassProfile& profile, double x);

/// Reference point for Y: 0 when it lies in the domain, else the midpoint of
/// a bounded domain, else one unit inside the finite edge.

}  // namespace gsip
