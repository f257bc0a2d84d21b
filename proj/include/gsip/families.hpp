#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gsip/grid.hpp"
#include "gsip/profiles.hpp"
#include "gsip/susy.hpp"

namespace gsip {

/// The six closed-form families. Each writes W = U'/2 + G(Y; a) with Y the
/// integrated inverse profile, so every family is a constant-mass shape
/// invariant superpotential in the variable Y.
enum class Family {
  OscShift,       ///< G = R0 Y / 2 + a, E_n = n R0
  Exponential,    ///< G = a - u0 exp(-alpha Y) / 2, E_n = alpha n (2a - alpha n)
  OscLinearG,     ///< G = a Y, E_n = 2 a n
  OscInverseG,    ///< G = C1 Y / 4 + a / (alpha Y), E_n = C1 n
  Trigonometric,  ///< G = -a tan(alpha Y) + b sec(alpha Y), E_n = n alpha (n alpha - 2a)
  Hyperbolic,     ///< G = a tanh(alpha Y) + b sech(alpha Y), E_n = n alpha (2a - n alpha)
};

std::string_view family_name(Family family);
std::optional<Family> parse_family(std::string_view name);

/// Parameters in the standardized parameterization: the exponential family
/// carries R0 = 0, the trigonometric and hyperbolic families carry (a, b,
/// alpha) and the constant C3 of the inverse family is absorbed into a.
struct FamilySpec {
  Family family = Family::OscShift;
  double a = 0.0;
  double alpha = 0.0;
  double R0 = 1.0;
  double u0 = 1.0;
  double C1 = 1.0;
  double b = 0.0;
  MassProfile profile = MassProfile::constant(1.0 / std::sqrt(2.0));

  /// Same family and profile with the shape parameter replaced.
  FamilySpec with_a(double new_a) const {
    FamilySpec copy = *this;
    copy.a = new_a;
    return copy;
  }
};

/// Rejects R0 <= 0 (OscShift), a <= 0 (OscLinearG), C1 <= 0 (OscInverseG),
/// alpha == 0 where alpha is a divisor, and non-finite values.
void validate(const FamilySpec& spec);

/// Y-range on which the family is regular (poles of tan/sec or 1/Y excluded),
/// intersected with the profile's own range.
Interval family_y_interval(const FamilySpec& spec);
/// The same working interval in x.
Interval family_interval(const FamilySpec& spec);

double superpotential_of(const FamilySpec& spec, double x);
/// Closed-form V1(x, a), written out per family.
double potential_of(const FamilySpec& spec, double x);
/// Closed-form E_n; throws UnboundLevelError unless E_1 < ... < E_n.
double spectrum_of(const FamilySpec& spec, std::size_t n);
/// Unnormalized psi0(x). Runs check_normalizability first.
double ground_state_of(const FamilySpec& spec, double x);
/// log |psi0(x)| up to a constant, without the normalizability gate.
double log_ground_state_of(const FamilySpec& spec, double x);
/// a - alpha; a unchanged for the alpha = 0 families.
double param_step_of(const FamilySpec& spec);
/// R(a) = E_1 for the given a.
double r_of(const FamilySpec& spec);

/// Number of levels n < max_levels with strictly increasing E_0 < ... < E_n.
std::size_t bound_level_count(const FamilySpec& spec, std::size_t max_levels);
/// True for the families whose spectrum ends (exponential, hyperbolic).
bool has_finite_spectrum(const FamilySpec& spec);

/// The family packaged for the SUSY machinery.
Superpotential make_superpotential(const FamilySpec& spec);

/// Default verification box: the working interval with the edges pulled in
/// to where every normalizable psi0 among a_1 ... a_{levels} drops below `cutoff` of its
/// peak. Trigonometric walls sit at |alpha Y| = pi/2 - 1e-3 and half-line
/// profiles start at x = 1e-3.
Interval default_box(const FamilySpec& spec, std::size_t levels, double cutoff = 1e-12);

struct CanonicalCase {
  std::string id;
  FamilySpec spec;
};

/// One representative parameter set per family, all with U = 1/sqrt(2).
std::vector<CanonicalCase> canonical_cases();

}  // namespace gsip
