#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstddef>
#include <string>

#include "gsip/errors.hpp"

namespace gsip {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Uniform grid of `n` interior nodes on [x_lo, x_hi] with homogeneous
/// Dirichlet values at both ends. Node i sits at x_lo + (i + 1) h.
template <typename Scalar>
class Grid {
 public:
  static constexpr std::ptrdiff_t kMinNodes = 1;

  Grid(Scalar x_lo, Scalar x_hi, std::ptrdiff_t n) : x_lo_(x_lo), x_hi_(x_hi), n_(n) {
    if (n < kMinNodes) {
      throw GridError("grid needs at least one interior node, got " +
                      std::to_string(n));
    }
    if (!(x_hi > x_lo) || !std::isfinite(double(x_lo)) || !std::isfinite(double(x_hi))) {
      throw GridError("grid requires finite x_lo < x_hi");
    }
    h_ = (x_hi - x_lo) / Scalar(n + 1);
  }

  Scalar x_lo() const { return x_lo_; }
  Scalar x_hi() const { return x_hi_; }
  std::ptrdiff_t size() const { return n_; }
  Scalar spacing() const { return h_; }

  Scalar node(std::ptrdiff_t i) const { return x_lo_ + Scalar(i + 1) * h_; }
  /// Half-node between node i-1 and node i; i runs over 0..n.
  Scalar half_node(std::ptrdiff_t i) const { return x_lo_ + (Scalar(i) + Scalar(0.5)) * h_; }

  Vector<Scalar> nodes() const {
    Vector<Scalar> x(n_);
    for (std::ptrdiff_t i = 0; i < n_; ++i) x[i] = node(i);
    return x;
  }

  /// Same interval with the spacing halved (2n + 1 interior nodes).
  Grid refined() const { return Grid(x_lo_, x_hi_, 2 * n_ + 1); }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  Scalar x_lo_;
  Scalar x_hi_;
  std::ptrdiff_t n_;
  Scalar h_{};
};

/// Values of a function on the interior nodes of a grid.
template <typename Scalar>
struct GridFunction {
  Grid<Scalar> grid;
  Vector<Scalar> values;

  GridFunction(Grid<Scalar> g, Vector<Scalar> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.size()) throw GridError("grid function length mismatch");
  }
  explicit GridFunction(Grid<Scalar> g) : grid(std::move(g)), values(Vector<Scalar>::Zero(grid.size())) {}

  template <typename F>
  static GridFunction sample(const Grid<Scalar>& g, F&& f) {
    Vector<Scalar> v(g.size());
    for (std::ptrdiff_t i = 0; i < g.size(); ++i) v[i] = f(g.node(i));
    return GridFunction(g, std::move(v));
  }
};

/// Trapezoidal inner product; the Dirichlet end values are zero.
template <typename Scalar>
Scalar inner(const GridFunction<Scalar>& a, const GridFunction<Scalar>& b) {
  if (!(a.grid == b.grid)) throw GridError("inner product of functions on different grids");
  return a.grid.spacing() * a.values.dot(b.values);
}

template <typename Scalar>
Scalar norm(const GridFunction<Scalar>& f) {
  return std::sqrt(inner(f, f));
}

/// Scales to unit trapezoidal norm and makes the first significant
/// component positive.
template <typename Scalar>
GridFunction<Scalar> normalized(GridFunction<Scalar> f) {
  const Scalar n = norm(f);
  if (n == Scalar(0)) return f;
  f.values /= n;
  const Scalar cutoff = Scalar(1e-3) * f.values.cwiseAbs().maxCoeff();
  for (std::ptrdiff_t i = 0; i < f.values.size(); ++i) {
    if (std::abs(f.values[i]) > cutoff) {
      if (f.values[i] < Scalar(0)) f.values = -f.values;
      break;
    }
  }
  return f;
}

/// |<a, b>| after normalizing both.
template <typename Scalar>
Scalar overlap(const GridFunction<Scalar>& a, const GridFunction<Scalar>& b) {
  return std::abs(inner(a, b)) / (norm(a) * norm(b));
}

/// Sign changes among components above `relative_floor` of the peak.
template <typename Scalar>
std::ptrdiff_t count_nodes(const GridFunction<Scalar>& f, Scalar relative_floor = Scalar(1e-8)) {
  const Scalar floor = relative_floor * f.values.cwiseAbs().maxCoeff();
  std::ptrdiff_t changes = 0;
  int last_sign = 0;
  for (std::ptrdiff_t i = 0; i < f.values.size(); ++i) {
    const Scalar v = f.values[i];
    if (std::abs(v) <= floor) continue;
    const int sign = v > 0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes;
}

}  // namespace gsip
