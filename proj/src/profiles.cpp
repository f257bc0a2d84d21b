#include "gsip/profiles.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "gsip/errors.hpp"
#include "gsip/quadrature.hpp"

namespace gsip {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string describe(double x, const Interval& d) {
  std::ostringstream out;
  out.precision(17);
  out << "x = " << x << " outside domain (" << d.lo << ", " << d.hi << ")";
  return out.str();
}

// Keeps finite-difference stencils inside an open domain.
double fit_step(double x, double step, const Interval& domain, double reach) {
  const double room = std::min(x - domain.lo, domain.hi - x);
  if (room < reach * step) step = room / (2.0 * reach);
  return step;
}

}  // namespace

bool Interval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

double default_reference_point(const Interval& domain) {
  if (domain.contains(0.0)) return 0.0;
  if (domain.bounded()) return 0.5 * (domain.lo + domain.hi);
  if (std::isfinite(domain.lo)) return domain.lo + 1.0;
  if (std::isfinite(domain.hi)) return domain.hi - 1.0;
  return 0.0;
}

MassProfile MassProfile::constant(double value) {
  if (value == 0.0 || !std::isfinite(value)) {
    throw DomainError("constant profile requires a finite non-zero U0");
  }
  MassProfile p;
  p.kind_ = ProfileKind::Constant;
  p.parameter_ = value;
  p.domain_ = Interval{};
  p.x_ref_ = 0.0;
  p.u_ = [value](double) { return value; };
  p.u_prime_ = [](double) { return 0.0; };
  p.u_double_prime_ = [](double) { return 0.0; };
  p.y_eval_ = [value](double x) { return x / value; };
  p.y_inverse_ = [value](double y) { return y * value; };
  p.y_range_ = Interval{};
  return p;
}

MassProfile MassProfile::inverse_linear(double c) {
  if (c == 0.0 || !std::isfinite(c)) {
    throw DomainError("inverse-linear profile requires a finite non-zero c");
  }
  MassProfile p;
  p.kind_ = ProfileKind::InverseLinear;
  p.parameter_ = c;
  p.domain_ = Interval{0.0, kInf};
  // 1/U = x/c is integrable at the origin, so Y is anchored there: Y = x^2/(2c).
  p.x_ref_ = 0.0;
  p.u_ = [c](double x) { return c / x; };
  p.u_prime_ = [c](double x) { return -c / (x * x); };
  p.u_double_prime_ = [c](double x) { return 2.0 * c / (x * x * x); };
  p.y_eval_ = [c](double x) { return x * x / (2.0 * c); };
  p.y_inverse_ = [c](double y) { return std::sqrt(2.0 * c * y); };
  p.y_range_ = c > 0 ? Interval{0.0, kInf} : Interval{-kInf, 0.0};
  return p;
}

MassProfile MassProfile::sech_like() {
  MassProfile p;
  p.kind_ = ProfileKind::SechLike;
  p.domain_ = Interval{};
  p.x_ref_ = 0.0;
  p.u_ = [](double x) { return 1.0 / std::cosh(x); };
  p.u_prime_ = [](double x) {
    const double c = std::cosh(x);
    return -std::sinh(x) / (c * c);
  };
  p.u_double_prime_ = [](double x) {
    const double s = std::sinh(x);
    const double c = std::cosh(x);
    return (s * s - 1.0) / (c * c * c);
  };
  p.y_eval_ = [](double x) { return std::sinh(x); };
  p.y_inverse_ = [](double y) { return std::asinh(y); };
  p.y_range_ = Interval{};
  return p;
}

MassProfile MassProfile::linear_scaled(double s) {
  if (s == 0.0 || !std::isfinite(s)) {
    throw DomainError("linear profile requires a finite non-zero scale");
  }
  MassProfile p;
  p.kind_ = ProfileKind::LinearScaled;
  p.parameter_ = s;
  p.domain_ = Interval{0.0, kInf};
  p.x_ref_ = 1.0;
  p.u_ = [s](double x) { return s * x; };
  p.u_prime_ = [s](double) { return s; };
  p.u_double_prime_ = [](double) { return 0.0; };
  p.y_eval_ = [s](double x) { return std::log(x) / s; };
  p.y_inverse_ = [s](double y) { return std::exp(s * y); };
  p.y_range_ = Interval{};
  return p;
}

MassProfile MassProfile::custom(RealFunction u_eval, Interval domain,
                                std::optional<RealFunction> y_eval) {
  if (!(domain.lo < domain.hi)) throw DomainError("custom profile domain is empty");
  MassProfile p;
  p.kind_ = ProfileKind::Custom;
  p.domain_ = domain;
  p.x_ref_ = default_reference_point(domain);
  p.u_ = std::move(u_eval);
  const auto u = p.u_;
  p.u_prime_ = [u, domain](double x) {
    const double h = fit_step(x, 1e-5 * std::max(1.0, std::abs(x)), domain, 1.0);
    return (u(x + h) - u(x - h)) / (2.0 * h);
  };
  // Five-point stencil; a larger step than U' keeps the h^-2 roundoff small.
  p.u_double_prime_ = [u, domain](double x) {
    const double h = fit_step(x, 1e-3 * std::max(1.0, std::abs(x)), domain, 2.0);
    return (-u(x + 2 * h) + 16 * u(x + h) - 30 * u(x) + 16 * u(x - h) - u(x - 2 * h)) /
           (12.0 * h * h);
  };
  if (y_eval) p.y_eval_ = std::move(*y_eval);
  return p;
}

MassProfile MassProfile::from_name(std::string_view name, double parameter) {
  if (name == "constant") return constant(parameter);
  if (name == "inverse-linear") return inverse_linear(parameter);
  if (name == "sech-mass") return sech_like();
  if (name == "linear") return linear_scaled(parameter);
  throw DomainError("unknown profile '" + std::string(name) + "'");
}

std::string_view MassProfile::name() const {
  switch (kind_) {
    case ProfileKind::Constant: return "constant";
    case ProfileKind::InverseLinear: return "inverse-linear";
    case ProfileKind::SechLike: return "sech-mass";
    case ProfileKind::LinearScaled: return "linear";
    case ProfileKind::Custom: return "custom";
  }
  return "custom";
}

void MassProfile::require_in_domain(double x) const {
  if (!domain_.contains(x)) throw DomainError(describe(x, domain_));
}

double MassProfile::u(double x) const {
  require_in_domain(x);
  return u_(x);
}

double MassProfile::u_prime(double x) const {
  require_in_domain(x);
  return u_prime_(x);
}

double MassProfile::u_double_prime(double x) const {
  require_in_domain(x);
  return u_double_prime_(x);
}

double MassProfile::y(double x) const {
  require_in_domain(x);
  if (y_eval_) return y_eval_(x);
  return y_by_quadrature(x);
}

double MassProfile::y_by_quadrature(double x) const {
  require_in_domain(x);
  const double anchor = y_eval_ ? y_eval_(x_ref_) : 0.0;
  const auto inverse_u = [this](double t) { return 1.0 / u_(t); };
  return anchor + integrate(inverse_u, x_ref_, x, 1e-12);
}

Interval MassProfile::y_range() const {
  if (y_range_) return *y_range_;
  auto edge_value = [this](double edge) {
    if (!std::isfinite(edge)) {
      const double probe = std::isfinite(domain_.lo) || std::isfinite(domain_.hi)
                               ? x_ref_
                               : 0.0;
      const double sign = (edge > probe ? 1.0 : -1.0) * (u_(probe) > 0 ? 1.0 : -1.0);
      return sign * kInf;
    }
    try {
      const double anchor = y_eval_ ? y_eval_(x_ref_) : 0.0;
      return anchor + integrate([this](double t) { return 1.0 / u_(t); }, x_ref_, edge, 1e-10);
    } catch (const NumericsError&) {
      const double sign = (edge > x_ref_ ? 1.0 : -1.0) * (u_(x_ref_) > 0 ? 1.0 : -1.0);
      return sign * kInf;
    }
  };
  const double a = edge_value(domain_.lo);
  const double b = edge_value(domain_.hi);
  return Interval{std::min(a, b), std::max(a, b)};
}

double MassProfile::y_inverse(double target) const {
  if (y_inverse_) return y_inverse_(target);
  const Interval range = y_range();
  if (!(target > range.lo && target < range.hi)) {
    throw DomainError("Y = " + std::to_string(target) + " not attained on the profile domain");
  }
  // Bracket the root, growing outward on infinite sides.
  const bool increasing = u_(x_ref_) > 0;
  double lo = x_ref_;
  double hi = x_ref_;
  double step = 1.0;
  auto below = [&](double x) { return (y(x) < target) == increasing; };
  while (below(hi)) {
    hi = std::isfinite(domain_.hi) ? 0.5 * (hi + domain_.hi) : hi + step;
    step *= 2.0;
    if (step > 1e300) throw NumericsError("could not bracket Y inverse");
  }
  step = 1.0;
  while (!below(lo)) {
    lo = std::isfinite(domain_.lo) ? 0.5 * (lo + domain_.lo) : lo - step;
    step *= 2.0;
    if (step > 1e300) throw NumericsError("could not bracket Y inverse");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (below(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double eval_mass(const MassProfile& profile, double x) {
  const double u = profile.u(x);
  if (u == 0.0 || !std::isfinite(u)) {
    throw DomainError("U(" + std::to_string(x) + ") = " + std::to_string(u) + " gives no finite positive mass");
  }
  return 1.0 / (2.0 * u * u);
}

double eval_Y(const MassProfile& profile, double x) { return profile.y(x); }

double eval_V0(const MassProfile& profile, double x) {
  const double up = profile.u_prime(x);
  return -0.25 * up * up - 0.5 * profile.u(x) * profile.u_double_prime(x);
}

}  // namespace gsip
