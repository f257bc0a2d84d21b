#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "gsip/grid.hpp"
#include "gsip/profiles.hpp"

namespace gsip {

using ParametricFunction = std::function<double(double x, double a)>;

/// W(x, a) together with the shape-invariance data a -> a2, R(a).
///
/// `w_prime` may be left empty, in which case dW/dx is taken by central
/// differences. `log_ground_state`, when present, is the closed-form
/// log |psi0(x; a)| up to an additive constant; otherwise psi0 is obtained
/// by integrating -W/U.
struct Superpotential {
  ParametricFunction w_eval;
  ParametricFunction w_prime;
  MassProfile u_ref = MassProfile::constant(1.0);
  std::function<double(double)> param_step;
  std::function<double(double)> r_of_a;

  /// Open working interval in x and its image in Y.
  Interval interval;
  Interval y_interval;
  /// Where psi0 peaks (zero of W), used to anchor asymptotic probes.
  std::function<double(double a)> y_center;
  /// Characteristic length in Y (1/alpha, 1/sqrt(R0), ...).
  double scale = 1.0;
  ParametricFunction log_ground_state;

  double w(double x, double a) const { return w_eval(x, a); }
  double dw(double x, double a) const;
};

/// V1 = W^2 - (U W)'.
double V1_from_W(const Superpotential& w, double a, double x);
/// V2 = W^2 - (U W)' + 2 U W' - U U''.
double V2_from_W(const Superpotential& w, double a, double x);

/// max over grid nodes of |V2(x, a1) - V1(x, a2) - R(a1)|.
double shape_invariance_residual(const Superpotential& w, double a1, const Grid<double>& grid);

/// E_n = sum_{i=1..n} R(a_i) with a_{i+1} = param_step(a_i).
/// Throws UnboundLevelError when some R(a_i) < 0.
double spectrum_accumulate(const Superpotential& w, double a1, std::size_t n);

/// (A psi) = U psi' + W psi with fourth-order differences (one-sided at the
/// edges, Dirichlet zeros outside).
GridFunction<double> apply_A(const Superpotential& w, double a, const GridFunction<double>& psi);
/// (A^dagger psi) = -(U psi)' + W psi.
GridFunction<double> apply_A_dagger(const Superpotential& w, double a, const GridFunction<double>& psi);

/// Unit-norm psi0(x; a) sampled on the grid.
GridFunction<double> ground_state_on_grid(const Superpotential& w, double a, const Grid<double>& grid);

/// psi_n = A^dagger(a1) ... A^dagger(an) psi0(a_{n+1}), normalized.
GridFunction<double> ladder_excited_state(const Superpotential& w, double a1, std::size_t n,
                                          const Grid<double>& grid);

struct NormalizabilityResult {
  bool normalizable = false;
  /// W/U sampled toward each edge (infinite Y), or the last increment of
  /// int W/U dx (finite Y edges).
  double lower_value = 0.0;
  double upper_value = 0.0;
  std::string diagnostic;
};

/// Decides whether psi0 = exp(-int W/U) is square integrable on the working
/// interval. Edges at infinite Y use the opposite-sign criterion on W/U;
/// edges at finite Y require int W/U dx to diverge to +infinity.
/// Throws IndeterminateError when an asymptotic sign cannot be decided.
NormalizabilityResult check_normalizability(const Superpotential& w, double a);

/// Fourth-order first derivative of interior values with zero end values.
Vector<double> derivative4(const Vector<double>& interior, double h);

}  // namespace gsip
