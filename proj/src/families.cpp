#include "gsip/families.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "gsip/errors.hpp"

namespace gsip {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPoleTolerance = 1e-12;
constexpr double kTrigWallOffset = 1e-3;
constexpr double kHalfLineStart = 1e-3;

constexpr std::array<std::pair<Family, std::string_view>, 6> kNames = {{
    {Family::OscShift, "OscShift"},
    {Family::Exponential, "Exponential"},
    {Family::OscLinearG, "OscLinearG"},
    {Family::OscInverseG, "OscInverseG"},
    {Family::Trigonometric, "Trigonometric"},
    {Family::Hyperbolic, "Hyperbolic"},
}};

Interval intersect(const Interval& a, const Interval& b) {
  return Interval{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) throw ParameterError(std::string(field) + " must be finite", field);
}

// G(Y; a) and dG/dY; W = U'/2 + G and W' = U''/2 + G_Y / U.
double shape_term(const FamilySpec& s, double y, double a) {
  switch (s.family) {
    case Family::OscShift: return 0.5 * s.R0 * y + a;
    case Family::Exponential: return a - 0.5 * s.u0 * std::exp(-s.alpha * y);
    case Family::OscLinearG: return a * y;
    case Family::OscInverseG:
      if (std::abs(y) < kPoleTolerance) throw PoleError("Y = 0 is a pole of the inverse family");
      return 0.25 * s.C1 * y + a / (s.alpha * y);
    case Family::Trigonometric: {
      const double c = std::cos(s.alpha * y);
      if (std::abs(c) < kPoleTolerance) throw PoleError("cos(alpha Y) = 0 is a pole of the trigonometric family");
      return (-a * std::sin(s.alpha * y) + s.b) / c;
    }
    case Family::Hyperbolic: {
      const double c = std::cosh(s.alpha * y);
      return (a * std::sinh(s.alpha * y) + s.b) / c;
    }
  }
  return 0.0;
}

double shape_term_dy(const FamilySpec& s, double y, double a) {
  switch (s.family) {
    case Family::OscShift: return 0.5 * s.R0;
    case Family::Exponential: return 0.5 * s.alpha * s.u0 * std::exp(-s.alpha * y);
    case Family::OscLinearG: return a;
    case Family::OscInverseG: return 0.25 * s.C1 - a / (s.alpha * y * y);
    case Family::Trigonometric: {
      const double c = std::cos(s.alpha * y);
      const double t = std::sin(s.alpha * y) / c;
      return s.alpha * (-a / c + s.b * t) / c;
    }
    case Family::Hyperbolic: {
      const double sech = 1.0 / std::cosh(s.alpha * y);
      return s.alpha * sech * (a * sech - s.b * std::tanh(s.alpha * y));
    }
  }
  return 0.0;
}

void require_in_interval(const FamilySpec& spec, double x) {
  const Interval iv = family_interval(spec);
  if (!iv.contains(x)) {
    throw DomainError("x = " + std::to_string(x) + " outside the working interval of " +
                      std::string(family_name(spec.family)));
  }
}

double y_center_of(const FamilySpec& s, double a) {
  switch (s.family) {
    case Family::OscShift: return -2.0 * a / s.R0;
    case Family::Exponential: {
      const double ratio = 2.0 * a / s.u0;
      return ratio > 0 ? -std::log(ratio) / s.alpha : std::nan("");
    }
    case Family::OscLinearG: return 0.0;
    case Family::OscInverseG: {
      const double sq = -4.0 * a / (s.alpha * s.C1);
      return sq > 0 ? std::sqrt(sq) : std::nan("");
    }
    case Family::Trigonometric: {
      // Zero of -a sin + b.
      const double ratio = a != 0.0 ? s.b / a : 2.0;
      return std::abs(ratio) < 1.0 ? std::asin(ratio) / s.alpha : 0.0;
    }
    case Family::Hyperbolic: return a != 0.0 ? std::asinh(-s.b / a) / s.alpha : 0.0;
  }
  return 0.0;
}

double characteristic_scale(const FamilySpec& s) {
  switch (s.family) {
    case Family::OscShift: return 1.0 / std::sqrt(s.R0);
    case Family::OscLinearG: return 1.0 / std::sqrt(2.0 * s.a);
    case Family::OscInverseG: return 1.0 / std::sqrt(s.C1);
    default: return 1.0 / std::abs(s.alpha);
  }
}

double spectrum_closed_form(const FamilySpec& s, double n) {
  switch (s.family) {
    case Family::OscShift: return n * s.R0;
    case Family::Exponential: return s.alpha * n * (2.0 * s.a - s.alpha * n);
    case Family::OscLinearG: return 2.0 * s.a * n;
    case Family::OscInverseG: return s.C1 * n;
    case Family::Trigonometric: return n * s.alpha * (n * s.alpha - 2.0 * s.a);
    case Family::Hyperbolic: return n * s.alpha * (2.0 * s.a - n * s.alpha);
  }
  return 0.0;
}

}  // namespace

std::string_view family_name(Family family) {
  for (const auto& [f, name] : kNames) {
    if (f == family) return name;
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& [f, n] : kNames) {
    if (n == name) return f;
  }
  return std::nullopt;
}

void validate(const FamilySpec& spec) {
  require_finite(spec.a, "a");
  require_finite(spec.alpha, "alpha");
  require_finite(spec.R0, "R0");
  require_finite(spec.u0, "u0");
  require_finite(spec.C1, "C1");
  require_finite(spec.b, "b");
  switch (spec.family) {
    case Family::OscShift:
      if (!(spec.R0 > 0)) throw ParameterError("OscShift requires R0 > 0", "R0");
      break;
    case Family::OscLinearG:
      if (!(spec.a > 0)) throw ParameterError("OscLinearG requires a > 0 (level spacing 2a)", "a");
      break;
    case Family::OscInverseG:
      if (spec.alpha == 0) throw ParameterError("OscInverseG requires alpha != 0", "alpha");
      if (!(spec.C1 > 0)) throw ParameterError("OscInverseG requires C1 > 0", "C1");
      break;
    case Family::Exponential:
      if (spec.alpha == 0) throw ParameterError("Exponential requires alpha != 0", "alpha");
      if (spec.u0 == 0) throw ParameterError("Exponential requires u0 != 0", "u0");
      break;
    case Family::Trigonometric:
    case Family::Hyperbolic:
      if (spec.alpha == 0) {
        throw ParameterError(std::string(family_name(spec.family)) + " requires alpha != 0", "alpha");
      }
      break;
  }
}

Interval family_y_interval(const FamilySpec& spec) {
  const Interval profile_range = spec.profile.y_range();
  switch (spec.family) {
    case Family::OscInverseG: {
      const Interval positive = intersect(profile_range, Interval{0.0, kInf});
      if (positive.lo < positive.hi) return positive;
      return intersect(profile_range, Interval{-kInf, 0.0});
    }
    case Family::Trigonometric: {
      const double pole = std::numbers::pi / (2.0 * std::abs(spec.alpha));
      return intersect(profile_range, Interval{-pole, pole});
    }
    default: return profile_range;
  }
}

Interval family_interval(const FamilySpec& spec) {
  const Interval yi = family_y_interval(spec);
  const Interval profile_y = spec.profile.y_range();
  const Interval& domain = spec.profile.domain();
  const bool increasing = spec.profile.y_increasing();
  auto to_x = [&](double y, bool lower_y) {
    if (y == (lower_y ? profile_y.lo : profile_y.hi)) {
      return (lower_y == increasing) ? domain.lo : domain.hi;
    }
    return spec.profile.y_inverse(y);
  };
  const double x_from_lo = to_x(yi.lo, true);
  const double x_from_hi = to_x(yi.hi, false);
  return Interval{std::min(x_from_lo, x_from_hi), std::max(x_from_lo, x_from_hi)};
}

double superpotential_of(const FamilySpec& spec, double x) {
  require_in_interval(spec, x);
  return 0.5 * spec.profile.u_prime(x) + shape_term(spec, spec.profile.y(x), spec.a);
}

double potential_of(const FamilySpec& spec, double x) {
  require_in_interval(spec, x);
  const double y = spec.profile.y(x);
  const double v0 = eval_V0(spec.profile, x);
  const double a = spec.a;
  const double al = spec.alpha;
  const double b = spec.b;
  switch (spec.family) {
    case Family::OscShift: {
      const double q = spec.R0 * y + 2.0 * a;
      return 0.25 * (q * q - 2.0 * spec.R0) + v0;
    }
    case Family::Exponential: {
      const double e = spec.u0 * std::exp(-al * y);
      return 0.25 * ((e - 2.0 * a) * (e - 2.0 * a) - 2.0 * al * e) + v0;
    }
    case Family::OscLinearG: return a * a * y * y - a + v0;
    case Family::OscInverseG: {
      if (std::abs(y) < kPoleTolerance) throw PoleError("Y = 0 is a pole of the inverse family");
      const double r = a / al;
      return spec.C1 * spec.C1 * y * y / 16.0 + (r * r + r) / (y * y) + 0.5 * spec.C1 * (r - 0.5) + v0;
    }
    case Family::Trigonometric: {
      const double c = std::cos(al * y);
      if (std::abs(c) < kPoleTolerance) throw PoleError("cos(alpha Y) = 0 is a pole of the trigonometric family");
      const double sec = 1.0 / c;
      const double tan = std::tan(al * y);
      const double q = a * tan - b * sec;
      return q * q - al * sec * (b * tan - a * sec) + v0;
    }
    case Family::Hyperbolic: {
      const double sech = 1.0 / std::cosh(al * y);
      const double tanh = std::tanh(al * y);
      const double q = a * tanh + b * sech;
      return q * q + al * sech * (b * tanh - a * sech) + v0;
    }
  }
  return 0.0;
}

double spectrum_of(const FamilySpec& spec, std::size_t n) {
  validate(spec);
  double previous = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double e = spectrum_closed_form(spec, double(i));
    if (!(e > previous)) {
      throw UnboundLevelError("level " + std::to_string(n) + " of " + std::string(family_name(spec.family)) +
                                  " is not bound (E_" + std::to_string(i) + " <= E_" + std::to_string(i - 1) + ")",
                              n);
    }
    previous = e;
  }
  return spectrum_closed_form(spec, double(n));
}

double log_ground_state_of(const FamilySpec& spec, double x) {
  const double y = spec.profile.y(x);
  const double mass_factor = -0.5 * std::log(std::abs(spec.profile.u(x)));
  const double a = spec.a;
  const double al = spec.alpha;
  switch (spec.family) {
    case Family::OscShift: return mass_factor - 0.25 * spec.R0 * y * y - a * y;
    case Family::Exponential: return mass_factor - spec.u0 * std::exp(-al * y) / (2.0 * al) - a * y;
    case Family::OscLinearG: return mass_factor - 0.5 * a * y * y;
    case Family::OscInverseG: return mass_factor - (a / al) * std::log(std::abs(y)) - spec.C1 * y * y / 8.0;
    case Family::Trigonometric: {
      const double sec = 1.0 / std::cos(al * y);
      return mass_factor + (a / al) * std::log(std::abs(sec)) -
             (spec.b / al) * std::log(std::abs(std::tan(al * y) + sec));
    }
    case Family::Hyperbolic:
      // int sech = atan(sinh); the closed form with |tanh + sech| does not solve A psi0 = 0.
      return mass_factor - (a / al) * std::log(std::cosh(al * y)) - (spec.b / al) * std::atan(std::sinh(al * y));
  }
  return 0.0;
}

double ground_state_of(const FamilySpec& spec, double x) {
  validate(spec);
  const auto check = check_normalizability(make_superpotential(spec), spec.a);
  if (!check.normalizable) {
    throw NormalizabilityError(std::string(family_name(spec.family)) +
                               " ground state is not normalizable: " + check.diagnostic);
  }
  require_in_interval(spec, x);
  return std::exp(log_ground_state_of(spec, x));
}

double param_step_of(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::OscShift:
    case Family::OscLinearG: return spec.a;
    default: return spec.a - spec.alpha;
  }
}

double r_of(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::OscShift: return spec.R0;
    case Family::OscLinearG: return 2.0 * spec.a;
    case Family::OscInverseG: return spec.C1;
    case Family::Exponential:
    case Family::Hyperbolic: return spec.alpha * (2.0 * spec.a - spec.alpha);
    case Family::Trigonometric: return spec.alpha * (spec.alpha - 2.0 * spec.a);
  }
  return 0.0;
}

std::size_t bound_level_count(const FamilySpec& spec, std::size_t max_levels) {
  std::size_t count = 0;
  for (std::size_t n = 0; n < max_levels; ++n) {
    try {
      spectrum_of(spec, n);
    } catch (const UnboundLevelError&) {
      break;
    }
    ++count;
  }
  return count;
}

bool has_finite_spectrum(const FamilySpec& spec) {
  return spec.family == Family::Exponential || spec.family == Family::Hyperbolic;
}

Superpotential make_superpotential(const FamilySpec& spec) {
  validate(spec);
  Superpotential w;
  const FamilySpec s = spec;
  w.u_ref = spec.profile;
  w.w_eval = [s](double x, double a) { return 0.5 * s.profile.u_prime(x) + shape_term(s, s.profile.y(x), a); };
  w.w_prime = [s](double x, double a) {
    return 0.5 * s.profile.u_double_prime(x) + shape_term_dy(s, s.profile.y(x), a) / s.profile.u(x);
  };
  w.param_step = [s](double a) { return param_step_of(s.with_a(a)); };
  w.r_of_a = [s](double a) { return r_of(s.with_a(a)); };
  w.interval = family_interval(spec);
  w.y_interval = family_y_interval(spec);
  w.y_center = [s](double a) { return y_center_of(s, a); };
  w.scale = characteristic_scale(spec);
  w.log_ground_state = [s](double x, double a) { return log_ground_state_of(s.with_a(a), x); };
  return w;
}

Interval default_box(const FamilySpec& spec, std::size_t levels, double cutoff) {
  validate(spec);
  const Interval interval = family_interval(spec);
  const Interval yi = family_y_interval(spec);
  const MassProfile& profile = spec.profile;
  const bool increasing = profile.y_increasing();
  const double drop = -std::log(cutoff);

  // Ground states whose tails bound the box: psi0 at a_1 ... a_levels, the
  // ones the ladder construction uses, skipping those that do not normalize.
  std::vector<FamilySpec> tails{spec};
  const Superpotential w = make_superpotential(spec);
  double a = spec.a;
  for (std::size_t i = 1; i < std::max<std::size_t>(levels, 1); ++i) {
    a = w.param_step(a);
    if (a == tails.back().a) break;
    const FamilySpec next = spec.with_a(a);
    try {
      if (check_normalizability(make_superpotential(next), a).normalizable) tails.push_back(next);
    } catch (const Error&) {
    }
  }

  double lo = interval.lo;
  double hi = interval.hi;
  // Finite-Y edges: walls of the trigonometric family, half-line starts.
  auto finite_edge = [&](double y_edge, double x_edge, bool is_lower_x) {
    if (spec.family == Family::Trigonometric && std::abs(std::abs(spec.alpha * y_edge) - std::numbers::pi / 2) < 1e-12) {
      const double y_wall = std::copysign(std::numbers::pi / 2 - kTrigWallOffset, y_edge) / std::abs(spec.alpha);
      return profile.y_inverse(y_wall);
    }
    if (x_edge == profile.domain().lo || x_edge == profile.domain().hi) {
      return is_lower_x ? x_edge + kHalfLineStart : x_edge - kHalfLineStart;
    }
    return x_edge;
  };

  double box_lo = -kInf;
  double box_hi = kInf;
  for (int side : {-1, +1}) {
    const bool lower_x = side < 0;
    const int y_dir = increasing ? side : -side;
    const double y_edge = y_dir > 0 ? yi.hi : yi.lo;
    const double x_edge = lower_x ? lo : hi;
    if (std::isfinite(y_edge)) {
      (lower_x ? box_lo : box_hi) = finite_edge(y_edge, x_edge, lower_x);
      continue;
    }
    // March outward in Y from the peak until every tail falls below cutoff.
    double reach = y_dir > 0 ? -kInf : kInf;
    for (const FamilySpec& t : tails) {
      const Superpotential tw = make_superpotential(t);
      double y0 = tw.y_center(t.a);
      if (!std::isfinite(y0) || !yi.contains(y0)) {
        y0 = yi.contains(0.0) ? 0.0 : (std::isfinite(yi.lo) ? yi.lo + tw.scale : yi.hi - tw.scale);
      }
      double peak = log_ground_state_of(t, profile.y_inverse(y0));
      double step = tw.scale / 16.0;
      double y = y0;
      for (int it = 0; it < 100000; ++it) {
        y += y_dir * step;
        step *= 1.01;
        const double value = log_ground_state_of(t, profile.y_inverse(y));
        if (!std::isfinite(value)) break;
        peak = std::max(peak, value);
        if (value < peak - drop) break;
      }
      reach = y_dir > 0 ? std::max(reach, y) : std::min(reach, y);
    }
    (lower_x ? box_lo : box_hi) = profile.y_inverse(reach);
  }
  if (box_lo > box_hi) std::swap(box_lo, box_hi);
  return Interval{std::max(box_lo, lo), std::min(box_hi, hi)};
}

std::vector<CanonicalCase> canonical_cases() {
  const MassProfile unit_mass = MassProfile::constant(1.0 / std::sqrt(2.0));
  std::vector<CanonicalCase> cases;
  FamilySpec s;
  s.profile = unit_mass;

  s.family = Family::OscShift;
  s.R0 = 2.0;
  s.a = 0.0;
  cases.push_back({"oscshift-harmonic", s});

  s = FamilySpec{};
  s.profile = unit_mass;
  s.family = Family::Exponential;
  s.alpha = 1.0;
  s.a = 3.5;
  s.u0 = 1.0;
  cases.push_back({"exponential-morse", s});

  s = FamilySpec{};
  s.profile = unit_mass;
  s.family = Family::OscLinearG;
  s.a = 1.0;
  cases.push_back({"osclinear-harmonic", s});

  s = FamilySpec{};
  s.profile = unit_mass;
  s.family = Family::OscInverseG;
  s.alpha = 1.0;
  s.C1 = 2.0;
  s.a = -2.0;
  cases.push_back({"oscinverse-radial", s});

  s = FamilySpec{};
  s.profile = unit_mass;
  s.family = Family::Trigonometric;
  s.alpha = 1.0;
  s.a = -3.0;
  s.b = 0.5;
  cases.push_back({"trigonometric-scarf1", s});

  s = FamilySpec{};
  s.profile = unit_mass;
  s.family = Family::Hyperbolic;
  s.alpha = 1.0;
  s.a = 3.0;
  s.b = 0.5;
  cases.push_back({"hyperbolic-scarf2", s});
  return cases;
}

}  // namespace gsip
