#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "gsip/errors.hpp"

namespace gsip {

namespace detail {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename Scalar>
struct Segment {
  Scalar lo, hi, value, error, magnitude;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <typename Scalar, typename F>
Segment<Scalar> kronrod15(F& f, Scalar lo, Scalar hi) {
  const Scalar center = (lo + hi) / 2;
  const Scalar half = (hi - lo) / 2;
  const Scalar fc = f(center);
  Scalar kronrod = fc * Scalar(kKronrodWeights[7]);
  Scalar gauss = fc * Scalar(kGaussWeights[3]);
  Scalar magnitude = std::abs(fc) * Scalar(kKronrodWeights[7]);
  for (int j = 0; j < 7; ++j) {
    const Scalar dx = half * Scalar(kKronrodNodes[j]);
    const Scalar f_lo = f(center - dx);
    const Scalar f_hi = f(center + dx);
    kronrod += Scalar(kKronrodWeights[j]) * (f_lo + f_hi);
    magnitude += Scalar(kKronrodWeights[j]) * (std::abs(f_lo) + std::abs(f_hi));
    if (j % 2 == 1) gauss += Scalar(kGaussWeights[j / 2]) * (f_lo + f_hi);
  }
  const Scalar width = std::abs(half);
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half), magnitude * width};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (7/15) quadrature of f over [lo, hi].
///
/// Subdivides the segment with the largest error estimate until the summed
/// estimate drops below max(abs_tol, rel_tol * |integral|). Throws
/// NumericsError when `max_segments` is exhausted first.
template <typename Scalar, typename F>
Scalar integrate(F&& f, Scalar lo, Scalar hi, Scalar rel_tol = Scalar(1e-12),
                 Scalar abs_tol = Scalar(0), int max_segments = 2000) {
  if (lo == hi) return Scalar(0);
  std::priority_queue<detail::Segment<Scalar>> pending;
  auto first = detail::kronrod15(f, lo, hi);
  if (!std::isfinite(first.value)) throw NumericsError("non-finite integrand in quadrature");
  Scalar total = first.value;
  Scalar error = first.error;
  Scalar magnitude = first.magnitude;
  pending.push(first);
  int segments = 1;
  // Error estimates below this level are dominated by cancellation.
  const Scalar noise = 50 * std::numeric_limits<Scalar>::epsilon();
  while (error > std::max({abs_tol, rel_tol * std::abs(total), noise * magnitude})) {
    if (segments >= max_segments) {
      throw NumericsError("adaptive quadrature did not converge");
    }
    const auto worst = pending.top();
    pending.pop();
    const Scalar mid = (worst.lo + worst.hi) / 2;
    auto left = detail::kronrod15(f, worst.lo, mid);
    auto right = detail::kronrod15(f, mid, worst.hi);
    if (!std::isfinite(left.value) || !std::isfinite(right.value)) {
      throw NumericsError("non-finite integrand in quadrature");
    }
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    magnitude += left.magnitude + right.magnitude - worst.magnitude;
    pending.push(left);
    pending.push(right);
    ++segments;
  }
  return total;
}

}  // namespace gsip
