#include "gsip/susy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "gsip/errors.hpp"
#include "gsip/quadrature.hpp"

namespace gsip {

namespace {

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

std::string format_value(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

// Interior point of the working interval to integrate W/U from.
double interior_anchor(const Superpotential& w, double a) {
  const Interval& yi = w.y_interval;
  double yc = w.y_center ? w.y_center(a) : 0.0;
  if (!std::isfinite(yc) || !(yc > yi.lo && yc < yi.hi)) {
    if (yi.bounded()) {
      yc = 0.5 * (yi.lo + yi.hi);
    } else if (yi.contains(0.0)) {
      yc = 0.0;
    } else {
      yc = std::isfinite(yi.lo) ? yi.lo + w.scale : yi.hi - w.scale;
    }
  }
  return yc;
}

}  // namespace

double Superpotential::dw(double x, double a) const {
  if (w_prime) return w_prime(x, a);
  double h = 1e-5 * std::max(1.0, std::abs(x));
  const double room = std::min(x - interval.lo, interval.hi - x);
  if (room < 2.0 * h) h = room / 4.0;
  return (w_eval(x + h, a) - w_eval(x - h, a)) / (2.0 * h);
}

double V1_from_W(const Superpotential& w, double a, double x) {
  const double W = w.w(x, a);
  const double U = w.u_ref.u(x);
  return W * W - w.u_ref.u_prime(x) * W - U * w.dw(x, a);
}

double V2_from_W(const Superpotential& w, double a, double x) {
  const double W = w.w(x, a);
  const double U = w.u_ref.u(x);
  return W * W - w.u_ref.u_prime(x) * W + U * w.dw(x, a) - U * w.u_ref.u_double_prime(x);
}

double shape_invariance_residual(const Superpotential& w, double a1, const Grid<double>& grid) {
  const double a2 = w.param_step(a1);
  const double r = w.r_of_a(a1);
  double worst = 0.0;
  for (std::ptrdiff_t i = 0; i < grid.size(); ++i) {
    const double x = grid.node(i);
    worst = std::max(worst, std::abs(V2_from_W(w, a1, x) - V1_from_W(w, a2, x) - r));
  }
  return worst;
}

double spectrum_accumulate(const Superpotential& w, double a1, std::size_t n) {
  double energy = 0.0;
  double a = a1;
  for (std::size_t i = 1; i <= n; ++i) {
    const double r = w.r_of_a(a);
    if (r < 0.0) {
      throw UnboundLevelError("level " + std::to_string(n) + " is not bound: R(a_" + std::to_string(i) +
                                  ") = " + format_value(r) + " < 0",
                              n);
    }
    energy += r;
    a = w.param_step(a);
  }
  return energy;
}

Vector<double> derivative4(const Vector<double>& interior, double h) {
  const std::ptrdiff_t n = interior.size();
  if (n < 5) throw GridError("fourth-order differences need at least 5 nodes");
  // Extended array with the Dirichlet zeros at both ends.
  Vector<double> e = Vector<double>::Zero(n + 2);
  e.segment(1, n) = interior;
  Vector<double> d(n);
  for (std::ptrdiff_t i = 1; i <= n; ++i) {
    double v;
    if (i == 1) {
      v = -3 * e[0] - 10 * e[1] + 18 * e[2] - 6 * e[3] + e[4];
    } else if (i == n) {
      v = 3 * e[n + 1] + 10 * e[n] - 18 * e[n - 1] + 6 * e[n - 2] - e[n - 3];
    } else {
      v = e[i - 2] - 8 * e[i - 1] + 8 * e[i + 1] - e[i + 2];
    }
    d[i - 1] = v / (12.0 * h);
  }
  return d;
}

GridFunction<double> apply_A(const Superpotential& w, double a, const GridFunction<double>& psi) {
  const Grid<double>& g = psi.grid;
  const Vector<double> dpsi = derivative4(psi.values, g.spacing());
  Vector<double> out(g.size());
  for (std::ptrdiff_t i = 0; i < g.size(); ++i) {
    const double x = g.node(i);
    out[i] = w.u_ref.u(x) * dpsi[i] + w.w(x, a) * psi.values[i];
  }
  return GridFunction<double>(g, std::move(out));
}

GridFunction<double> apply_A_dagger(const Superpotential& w, double a, const GridFunction<double>& psi) {
  const Grid<double>& g = psi.grid;
  Vector<double> u_psi(g.size());
  for (std::ptrdiff_t i = 0; i < g.size(); ++i) u_psi[i] = w.u_ref.u(g.node(i)) * psi.values[i];
  const Vector<double> d = derivative4(u_psi, g.spacing());
  Vector<double> out(g.size());
  for (std::ptrdiff_t i = 0; i < g.size(); ++i) {
    out[i] = -d[i] + w.w(g.node(i), a) * psi.values[i];
  }
  return GridFunction<double>(g, std::move(out));
}

GridFunction<double> ground_state_on_grid(const Superpotential& w, double a, const Grid<double>& grid) {
  const std::ptrdiff_t n = grid.size();
  Vector<double> logs(n);
  if (w.log_ground_state) {
    for (std::ptrdiff_t i = 0; i < n; ++i) logs[i] = w.log_ground_state(grid.node(i), a);
  } else {
    const auto integrand = [&](double x) { return -w.w(x, a) / w.u_ref.u(x); };
    logs[0] = 0.0;
    for (std::ptrdiff_t i = 1; i < n; ++i) {
      logs[i] = logs[i - 1] + integrate(integrand, grid.node(i - 1), grid.node(i), 1e-12);
    }
  }
  const double peak = logs.maxCoeff();
  Vector<double> values = (logs.array() - peak).exp().matrix();
  return normalized(GridFunction<double>(grid, std::move(values)));
}

GridFunction<double> ladder_excited_state(const Superpotential& w, double a1, std::size_t n,
                                          const Grid<double>& grid) {
  spectrum_accumulate(w, a1, n);
  std::vector<double> params{a1};
  for (std::size_t i = 0; i < n; ++i) params.push_back(w.param_step(params.back()));
  GridFunction<double> psi = ground_state_on_grid(w, params[n], grid);
  for (std::size_t i = n; i-- > 0;) {
    psi = normalized(apply_A_dagger(w, params[i], psi));
  }
  return psi;
}

NormalizabilityResult check_normalizability(const Superpotential& w, double a) {
  const MassProfile& profile = w.u_ref;
  const bool increasing = profile.y_increasing();
  const double y_anchor = interior_anchor(w, a);
  const double x_anchor = profile.y_inverse(y_anchor);
  const auto w_over_u = [&](double x) { return w.w(x, a) / profile.u(x); };

  NormalizabilityResult result;
  bool indeterminate = false;
  std::ostringstream diag;

  // side = -1 for the lower x edge, +1 for the upper one. int^x W/U must
  // reach +infinity at both, so W/U must be negative below and positive above.
  auto probe_edge = [&](int side, double& reported) {
    const int y_direction = increasing ? side : -side;
    const double y_edge = y_direction > 0 ? w.y_interval.hi : w.y_interval.lo;
    const char* label = side < 0 ? "lower" : "upper";
    if (!std::isfinite(y_edge)) {
      double samples[2];
      for (int k = 0; k < 2; ++k) {
        const double y = y_anchor + y_direction * 10.0 * w.scale * (k + 1);
        samples[k] = w_over_u(profile.y_inverse(y));
      }
      reported = samples[1];
      const bool decided = sign_of(samples[0]) == sign_of(samples[1]) && std::isfinite(samples[1]) &&
                           std::abs(samples[1]) > 1e-12;
      if (!decided) {
        indeterminate = true;
        diag << label << ": W/U sign undecided (" << format_value(samples[0]) << ", "
             << format_value(samples[1]) << "); ";
        return false;
      }
      const bool ok = sign_of(samples[1]) == side;
      diag << label << ": W/U -> " << format_value(samples[1]) << (ok ? " ok; " : " wrong sign; ");
      return ok;
    }
    // Finite Y edge: look for a divergent int W/U dx as x approaches it.
    const double x_edge = side < 0 ? w.interval.lo : w.interval.hi;
    const double span = std::abs(x_edge - x_anchor);
    double levels[3];
    for (int k = 0; k < 3; ++k) {
      const double offset = span * std::pow(10.0, -2.0 * (k + 1));
      const double x = x_edge - side * offset;
      levels[k] = integrate(w_over_u, x_anchor, x, 1e-10);
    }
    const double d1 = levels[1] - levels[0];
    const double d2 = levels[2] - levels[1];
    reported = d2;
    const bool ok = d1 > 0 && d2 > 0 && d2 >= 0.5 * d1;
    diag << label << ": int W/U increments " << format_value(d1) << ", " << format_value(d2)
         << (ok ? " diverge; " : " do not diverge; ");
    return ok;
  };

  const bool lower_ok = probe_edge(-1, result.lower_value);
  const bool upper_ok = probe_edge(+1, result.upper_value);
  result.diagnostic = diag.str();
  if (indeterminate) {
    throw IndeterminateError("normalizability undecided: " + result.diagnostic, result.lower_value,
                             result.upper_value);
  }
  result.normalizable = lower_ok && upper_ok;
  return result;
}

}  // namespace gsip
