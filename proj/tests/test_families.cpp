#include <cmath>
#include <numbers>

#include <Eigen/QR>
#include <gtest/gtest.h>

#include "gsip/errors.hpp"
#include "gsip/families.hpp"

using namespace gsip;

namespace {

const MassProfile kUnit = MassProfile::constant(1.0 / std::sqrt(2.0));

FamilySpec make(Family f, double a, double alpha = 0.0, MassProfile profile = kUnit) {
  FamilySpec s;
  s.family = f;
  s.a = a;
  s.alpha = alpha;
  s.profile = profile;
  return s;
}

Grid<double> box_grid(const FamilySpec& s, std::ptrdiff_t n = 1000) {
  const Interval box = default_box(s, 4);
  return Grid<double>(box.lo, box.hi, n);
}

// Three-by-three parameter sweeps inside the validated ranges.
std::vector<FamilySpec> parameter_grid(Family f) {
  std::vector<FamilySpec> out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      FamilySpec s = make(f, 0.0);
      s.b = 0.5;
      switch (f) {
        case Family::OscShift:
          s.R0 = 1.0 + i;
          s.a = -1.0 + j;
          break;
        case Family::Exponential:
          s.alpha = 0.5 * (1 << i);
          s.a = 2.0 + 1.5 * j;
          break;
        case Family::OscLinearG:
          s.a = 0.5 * (1 << i);
          s.profile = MassProfile::constant(0.5 + 0.35 * j);
          break;
        case Family::OscInverseG:
          s.alpha = 1.0;
          s.C1 = 1 << i;
          s.a = -1.0 - j;
          break;
        case Family::Trigonometric:
          s.alpha = 0.5 * (1 << i);
          s.a = -1.0 - 2.0 * j;
          break;
        case Family::Hyperbolic:
          s.alpha = 0.5 + 0.5 * i;
          s.a = 2.0 + j;
          break;
      }
      out.push_back(s);
    }
  }
  return out;
}

const Family kAllFamilies[] = {Family::OscShift,    Family::Exponential,   Family::OscLinearG,
                               Family::OscInverseG, Family::Trigonometric, Family::Hyperbolic};

}  // namespace

TEST(Families, NamesRoundTrip) {
  for (Family f : kAllFamilies) EXPECT_EQ(parse_family(family_name(f)), f);
  EXPECT_EQ(parse_family("Morse"), std::nullopt);
}

TEST(Families, SuperpotentialExamples) {
  FamilySpec osc = make(Family::OscShift, 0.0);
  osc.R0 = 2.0;
  EXPECT_NEAR(superpotential_of(osc, 1.0), std::sqrt(2.0), 1e-15);

  const FamilySpec morse = make(Family::Exponential, 1.3, 0.8, MassProfile::constant(0.6));
  for (double x : {-1.0, 0.0, 2.0}) {
    const double y = x / 0.6;
    EXPECT_NEAR(superpotential_of(morse, x), -0.5 * std::exp(-0.8 * y) + 1.3, 1e-14);
  }

  for (const MassProfile& p : {MassProfile::sech_like(), MassProfile::inverse_linear(0.5)}) {
    const FamilySpec hyp = make(Family::Hyperbolic, 0.0, 1.0, p);
    for (double x : {0.3, 1.1, 2.0}) EXPECT_NEAR(superpotential_of(hyp, x), 0.5 * p.u_prime(x), 1e-15);
  }
}

TEST(Families, PotentialOscShiftInverseLinear) {
  FamilySpec s = make(Family::OscShift, 0.7, 0.0, MassProfile::inverse_linear(0.5));
  s.R0 = 2.5;
  for (double x : {0.2, 0.9, 1.7, 3.0}) {
    const double expected = std::pow(s.R0 * x * x / 2 + s.a, 2) - 5.0 / (16 * std::pow(x, 4)) - s.R0 / 2;
    EXPECT_NEAR(potential_of(s, x), expected, 1e-12 * std::max(1.0, std::abs(expected))) << x;
  }
}

TEST(Families, PotentialOscShiftSechMass) {
  FamilySpec s = make(Family::OscShift, 0.4, 0.0, MassProfile::sech_like());
  s.R0 = 2.0;
  for (double x : {-2.0, 0.0, 0.5, 1.5}) {
    const double sh = std::sinh(x);
    const double ch = std::cosh(x);
    const double expected =
        0.25 * std::pow(s.R0 * sh + 2 * s.a, 2) + (2 - 3 * sh * sh) / (4 * std::pow(ch, 4)) - s.R0 / 2;
    EXPECT_NEAR(potential_of(s, x), expected, 1e-12) << x;
  }
}

TEST(Families, PotentialExponentialLinearMass) {
  // U = -alpha x / 2 with u0 = 1 gives a quartic oscillator.
  const double alpha = 1.0;
  const double a = 2.0;
  const FamilySpec s = make(Family::Exponential, a, alpha, MassProfile::linear_scaled(-alpha / 2));
  for (double x : {0.3, 1.0, 2.2}) {
    const double expected = std::pow(x, 4) / 4 - (alpha / 2 + a) * x * x - alpha * alpha / 16 + a * a;
    EXPECT_NEAR(potential_of(s, x), expected, 1e-12 * std::max(1.0, std::abs(expected))) << x;
  }
}

TEST(Families, PotentialMatchesGenericFormula) {
  for (Family f : kAllFamilies) {
    for (const FamilySpec& s : parameter_grid(f)) {
      const Superpotential w = make_superpotential(s);
      const Grid<double> g = box_grid(s);
      for (std::ptrdiff_t i = 0; i < g.size(); ++i) {
        const double x = g.node(i);
        const double v = potential_of(s, x);
        EXPECT_NEAR(v, V1_from_W(w, s.a, x), 1e-10 * std::max(1.0, std::abs(v))) << family_name(f) << " x=" << x;
      }
    }
  }
}

TEST(Families, ShapeInvarianceAcrossParameters) {
  for (Family f : kAllFamilies) {
    for (const FamilySpec& s : parameter_grid(f)) {
      EXPECT_LT(shape_invariance_residual(make_superpotential(s), s.a, box_grid(s)), 1e-9)
          << family_name(f) << " a=" << s.a << " alpha=" << s.alpha;
    }
  }
}

TEST(Families, SpectrumExamples) {
  FamilySpec osc = make(Family::OscShift, 0.0);
  osc.R0 = 2.0;
  EXPECT_EQ(spectrum_of(osc, 4), 8.0);
  EXPECT_EQ(spectrum_of(make(Family::Exponential, 3.0, 1.0), 2), 8.0);
  for (Family f : kAllFamilies) EXPECT_EQ(spectrum_of(parameter_grid(f)[4], 0), 0.0);

  const FamilySpec trig = make(Family::Trigonometric, -2.0, 1.0);
  const double expected[] = {0, 5, 12, 21};
  for (std::size_t n = 0; n < 4; ++n) EXPECT_EQ(spectrum_of(trig, n), expected[n]);
}

TEST(Families, FiniteSpectraTerminate) {
  const FamilySpec morse = make(Family::Exponential, 3.0, 1.0);
  EXPECT_EQ(bound_level_count(morse, 10), 4u);
  EXPECT_THROW(spectrum_of(morse, 4), UnboundLevelError);
  EXPECT_TRUE(has_finite_spectrum(morse));
  EXPECT_EQ(bound_level_count(make(Family::Exponential, 3.5, 1.0), 10), 4u);
  EXPECT_FALSE(has_finite_spectrum(make(Family::Trigonometric, -3.0, 1.0)));
}

TEST(Families, EquiSpacedFamilies) {
  for (Family f : {Family::OscShift, Family::OscLinearG, Family::OscInverseG}) {
    const FamilySpec s = parameter_grid(f)[4];
    const double gap = spectrum_of(s, 1);
    for (std::size_t n = 1; n < 10; ++n) EXPECT_DOUBLE_EQ(spectrum_of(s, n + 1) - spectrum_of(s, n), gap);
  }
}

TEST(Families, ParameterSteps) {
  EXPECT_EQ(param_step_of(make(Family::Exponential, 3.0, 1.0)), 2.0);
  EXPECT_EQ(param_step_of(make(Family::OscShift, 5.0)), 5.0);
  EXPECT_EQ(param_step_of(make(Family::Hyperbolic, 2.0, 0.5)), 1.5);
}

TEST(Families, ValidationRejectsBadParameters) {
  FamilySpec osc = make(Family::OscShift, 0.0);
  osc.R0 = -1.0;
  EXPECT_THROW(validate(osc), ParameterError);
  for (Family f : {Family::Exponential, Family::OscInverseG, Family::Trigonometric, Family::Hyperbolic}) {
    try {
      validate(make(f, 1.0, 0.0));
      ADD_FAILURE() << family_name(f) << " accepted alpha = 0";
    } catch (const ParameterError& e) {
      EXPECT_EQ(e.field(), "alpha");
    }
  }
  FamilySpec nan_spec = make(Family::Trigonometric, std::nan(""), 1.0);
  EXPECT_THROW(validate(nan_spec), ParameterError);
}

TEST(Families, PolesRaise) {
  FamilySpec inv = make(Family::OscInverseG, -2.0, 1.0);
  inv.C1 = 2.0;
  EXPECT_THROW(superpotential_of(inv, 1e-14), PoleError);
  const FamilySpec trig = make(Family::Trigonometric, -3.0, 1.0);
  const double x_pole = (std::numbers::pi / 2 - 1e-13) / std::sqrt(2.0);
  EXPECT_THROW(potential_of(trig, x_pole), PoleError);
}

TEST(Families, TrigonometricIntervalStopsAtPoles) {
  const FamilySpec trig = make(Family::Trigonometric, -3.0, 2.0);
  const Interval iv = family_interval(trig);
  EXPECT_NEAR(iv.hi * std::sqrt(2.0) * 2.0, std::numbers::pi / 2, 1e-12);
  const Interval box = default_box(trig, 4);
  EXPECT_NEAR(box.hi * std::sqrt(2.0) * 2.0, std::numbers::pi / 2 - 1e-3, 1e-12);
}

TEST(Families, GroundStateOscShift) {
  for (const MassProfile& p : {kUnit, MassProfile::sech_like(), MassProfile::inverse_linear(0.5)}) {
    FamilySpec s = make(Family::OscShift, 0.3, 0.0, p);
    s.R0 = 1.5;
    const auto expected = [&](double x) {
      const double y = p.y(x);
      return std::pow(std::abs(p.u(x)), -0.5) * std::exp(-s.R0 * y * y / 4 - s.a * y);
    };
    const double x0 = p.kind() == ProfileKind::InverseLinear ? 1.0 : 0.2;
    for (double x : {x0, x0 + 0.4, x0 + 1.1}) {
      EXPECT_NEAR(ground_state_of(s, x) / ground_state_of(s, x0), expected(x) / expected(x0), 1e-12) << p.name();
    }
  }
}

TEST(Families, GroundStateExponentialLinearMass) {
  const double alpha = 1.0;
  const double a = 2.0;
  const FamilySpec s = make(Family::Exponential, a, alpha, MassProfile::linear_scaled(-alpha / 2));
  const auto expected = [&](double x) { return std::pow(x, 2 * a / alpha - 0.5) * std::exp(-x * x / (2 * alpha)); };
  for (double x : {0.4, 1.0, 2.5}) {
    EXPECT_NEAR(ground_state_of(s, x) / ground_state_of(s, 1.0), expected(x) / expected(1.0), 1e-12) << x;
  }
}

TEST(Families, HyperbolicGroundStateAnnihilated) {
  FamilySpec s = make(Family::Hyperbolic, 2.0, 1.0);
  const Superpotential w = make_superpotential(s);
  const GridFunction<double> psi0 = ground_state_on_grid(w, s.a, Grid<double>(-15.0, 15.0, 8000));
  EXPECT_LT(norm(apply_A(w, s.a, psi0)) / norm(psi0), 1e-8);
  // b = 0, U const: sech^{a/alpha}(alpha Y) with Y = sqrt(2) x.
  for (double x : {0.3, 1.2}) {
    EXPECT_NEAR(ground_state_of(s, x) / ground_state_of(s, 0.0), std::pow(1.0 / std::cosh(std::sqrt(2.0) * x), 2.0),
                1e-13);
  }
}

TEST(Families, NonNormalizableGroundStateRejected) {
  FamilySpec s = make(Family::Exponential, -1.0, 1.0);
  EXPECT_THROW(ground_state_of(s, 0.0), NormalizabilityError);
}

TEST(Families, ScarfOneFunctionalForm) {
  // With U const the trigonometric V1 is A tan^2 + B sec tan + C in alpha Y.
  FamilySpec s = make(Family::Trigonometric, -3.0, 1.0);
  s.b = 0.5;
  const Grid<double> g = box_grid(s, 200);
  Eigen::MatrixXd basis(g.size(), 3);
  Eigen::VectorXd v(g.size());
  for (std::ptrdiff_t i = 0; i < g.size(); ++i) {
    const double t = s.alpha * kUnit.y(g.node(i));
    basis(i, 0) = std::tan(t) * std::tan(t);
    basis(i, 1) = std::tan(t) / std::cos(t);
    basis(i, 2) = 1.0;
    v[i] = potential_of(s, g.node(i));
  }
  const Eigen::VectorXd coeffs = basis.colPivHouseholderQr().solve(v);
  const double scale = v.cwiseAbs().maxCoeff();
  EXPECT_LT((basis * coeffs - v).cwiseAbs().maxCoeff() / scale, 1e-10);
  const double a = s.a, b = s.b, al = s.alpha;
  EXPECT_NEAR(coeffs[0], a * a + b * b + a * al, 1e-8);
  EXPECT_NEAR(coeffs[1], -(2 * a * b + b * al), 1e-8);
  EXPECT_NEAR(coeffs[2], b * b + a * al, 1e-8);
}

TEST(Families, CanonicalCasesAreValidAndDistinct) {
  const auto cases = canonical_cases();
  ASSERT_EQ(cases.size(), 6u);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    EXPECT_NO_THROW(validate(cases[i].spec));
    EXPECT_EQ(cases[i].spec.family, kAllFamilies[i]);
    EXPECT_NEAR(cases[i].spec.profile.u(0.3), 1.0 / std::sqrt(2.0), 1e-15);
  }
}
