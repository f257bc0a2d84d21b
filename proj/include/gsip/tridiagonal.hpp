#pragma once

// Symmetric tridiagonal discretization of H = -d/dx (1/2m) d/dx + V and its
// lowest eigenpairs by Sturm-sequence bisection plus inverse iteration.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gsip/errors.hpp"
#include "gsip/grid.hpp"

namespace gsip {

template <typename Scalar>
struct TridiagonalOperator {
  Grid<Scalar> grid;
  Vector<Scalar> diag;
  Vector<Scalar> offdiag;  // length n - 1; (i, i+1) entry

  std::ptrdiff_t size() const { return diag.size(); }

  /// Gershgorin bound on the spectral radius.
  Scalar norm_bound() const {
    Scalar bound = 0;
    const std::ptrdiff_t n = size();
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      Scalar row = std::abs(diag[i]);
      if (i > 0) row += std::abs(offdiag[i - 1]);
      if (i + 1 < n) row += std::abs(offdiag[i]);
      bound = std::max(bound, row);
    }
    return bound;
  }

  Vector<Scalar> apply(const Vector<Scalar>& x) const {
    const std::ptrdiff_t n = size();
    Vector<Scalar> y = diag.cwiseProduct(x);
    y.head(n - 1) += offdiag.cwiseProduct(x.tail(n - 1));
    y.tail(n - 1) += offdiag.cwiseProduct(x.head(n - 1));
    return y;
  }

  GridFunction<Scalar> apply(const GridFunction<Scalar>& f) const {
    return GridFunction<Scalar>(grid, apply(f.values));
  }

  Scalar rayleigh_quotient(const Vector<Scalar>& x) const { return x.dot(apply(x)) / x.squaredNorm(); }
};

/// Flux-conservative BenDaniel-Duke discretization: kappa = 1/(2m) at the
/// half-nodes, V at the nodes.
template <typename Scalar, typename Mass, typename Potential>
TridiagonalOperator<Scalar> discretize(Mass&& mass, Potential&& potential, const Grid<Scalar>& grid) {
  const std::ptrdiff_t n = grid.size();
  const Scalar h2 = grid.spacing() * grid.spacing();
  Vector<Scalar> kappa(n + 1);
  for (std::ptrdiff_t i = 0; i <= n; ++i) {
    const Scalar x = grid.half_node(i);
    const Scalar m = mass(x);
    if (!(m > Scalar(0)) || !std::isfinite(double(m))) {
      throw MassError("non-positive or non-finite mass at x = " + std::to_string(double(x)));
    }
    kappa[i] = Scalar(1) / (Scalar(2) * m);
  }
  TridiagonalOperator<Scalar> op{grid, Vector<Scalar>(n), Vector<Scalar>(n - 1)};
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Scalar x = grid.node(i);
    const Scalar v = potential(x);
    if (!std::isfinite(double(v))) {
      throw PotentialError("non-finite potential at x = " + std::to_string(double(x)));
    }
    op.diag[i] = (kappa[i] + kappa[i + 1]) / h2 + v;
    if (i + 1 < n) op.offdiag[i] = -kappa[i + 1] / h2;
  }
  return op;
}

/// Number of eigenvalues strictly below `lambda`.
template <typename Scalar>
std::ptrdiff_t sturm_count(const TridiagonalOperator<Scalar>& op, Scalar lambda) {
  const Scalar pivmin = std::numeric_limits<Scalar>::min() * std::max(Scalar(1), op.norm_bound());
  std::ptrdiff_t count = 0;
  Scalar q = op.diag[0] - lambda;
  for (std::ptrdiff_t i = 0;; ++i) {
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < Scalar(0)) ++count;
    if (i + 1 == op.size()) break;
    q = op.diag[i + 1] - lambda - op.offdiag[i] * op.offdiag[i] / q;
  }
  return count;
}

/// The `index`-th smallest eigenvalue (0-based) by bisection on Sturm
/// counts, resolved to a few ulps or 1e-12 * norm, whichever is tighter.
template <typename Scalar>
Scalar bisect_eigenvalue(const TridiagonalOperator<Scalar>& op, std::ptrdiff_t index) {
  const Scalar norm = op.norm_bound();
  Scalar lo = -norm - Scalar(1);
  Scalar hi = norm + Scalar(1);
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar floor = std::min(Scalar(1e-12) * norm, Scalar(1e-3) * eps * norm) +
                       std::numeric_limits<Scalar>::min();
  for (int it = 0; it < 400; ++it) {
    const Scalar mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= std::max(floor, Scalar(2) * eps * std::max(std::abs(lo), std::abs(hi)))) break;
    if (sturm_count(op, mid) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return lo + (hi - lo) / 2;
}

template <typename Scalar>
Vector<Scalar> lowest_eigenvalues(const TridiagonalOperator<Scalar>& op, std::ptrdiff_t k) {
  if (k < 0 || k > op.size()) throw GridError("requested more eigenvalues than grid nodes");
  Vector<Scalar> values(k);
  for (std::ptrdiff_t j = 0; j < k; ++j) values[j] = bisect_eigenvalue(op, j);
  return values;
}

namespace detail {

/// LU factorization with partial pivoting of (T - shift I), applied by solve().
template <typename Scalar>
class ShiftedTridiagonalLU {
 public:
  ShiftedTridiagonalLU(const TridiagonalOperator<Scalar>& op, Scalar shift)
      : n_(op.size()), u0_(n_), u1_(n_), u2_(n_), l_(n_), swapped_(n_, false) {
    const Scalar tiny = std::numeric_limits<Scalar>::epsilon() * std::max(Scalar(1), op.norm_bound());
    // Row i of the working matrix: [.., diag, super, super2]
    Vector<Scalar> d = op.diag.array() - shift;
    Vector<Scalar> sub = op.offdiag;
    Vector<Scalar> sup = op.offdiag;
    Scalar cur_d = d[0];
    Scalar cur_s = n_ > 1 ? sup[0] : Scalar(0);
    for (std::ptrdiff_t i = 0; i < n_; ++i) {
      if (i + 1 == n_) {
        u0_[i] = std::abs(cur_d) < tiny ? tiny : cur_d;
        u1_[i] = 0;
        u2_[i] = 0;
        break;
      }
      const Scalar below = sub[i];
      const Scalar next_d = d[i + 1];
      const Scalar next_s = i + 2 < n_ ? sup[i + 1] : Scalar(0);
      if (std::abs(below) > std::abs(cur_d)) {
        // Swap rows i and i+1.
        swapped_[i] = true;
        u0_[i] = below;
        u1_[i] = next_d;
        u2_[i] = next_s;
        l_[i] = cur_d / below;
        cur_d = cur_s - l_[i] * next_d;
        cur_s = -l_[i] * next_s;
      } else {
        const Scalar pivot = std::abs(cur_d) < tiny ? tiny : cur_d;
        u0_[i] = pivot;
        u1_[i] = cur_s;
        u2_[i] = 0;
        l_[i] = below / pivot;
        cur_d = next_d - l_[i] * cur_s;
        cur_s = next_s;
      }
    }
  }

  Vector<Scalar> solve(Vector<Scalar> b) const {
    for (std::ptrdiff_t i = 0; i + 1 < n_; ++i) {
      if (swapped_[i]) std::swap(b[i], b[i + 1]);
      b[i + 1] -= l_[i] * b[i];
    }
    for (std::ptrdiff_t i = n_ - 1; i >= 0; --i) {
      Scalar s = b[i];
      if (i + 1 < n_) s -= u1_[i] * b[i + 1];
      if (i + 2 < n_) s -= u2_[i] * b[i + 2];
      b[i] = s / u0_[i];
    }
    return b;
  }

 private:
  std::ptrdiff_t n_;
  Vector<Scalar> u0_, u1_, u2_, l_;
  std::vector<bool> swapped_;
};

}  // namespace detail

template <typename Scalar>
struct Eigenpair {
  Scalar energy;
  GridFunction<Scalar> state;
};

/// The k smallest eigenpairs in ascending order. Vectors are normalized with
/// the trapezoidal weight h and signed so the first significant component is
/// positive.
template <typename Scalar>
std::vector<Eigenpair<Scalar>> lowest_eigenpairs(const TridiagonalOperator<Scalar>& op, std::ptrdiff_t k,
                                                 int max_iterations = 50) {
  const Vector<Scalar> energies = lowest_eigenvalues(op, k);
  const std::ptrdiff_t n = op.size();
  const Scalar h = op.grid.spacing();
  std::vector<Eigenpair<Scalar>> pairs;
  pairs.reserve(k);
  std::vector<Vector<Scalar>> found;
  for (std::ptrdiff_t j = 0; j < k; ++j) {
    const detail::ShiftedTridiagonalLU<Scalar> lu(op, energies[j]);
    Vector<Scalar> x(n);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      // Deterministic start vector with components along every mode.
      x[i] = Scalar(1) + Scalar(0.5) * std::sin(Scalar(0.7) * Scalar(i) + Scalar(j));
    }
    x.normalize();
    bool converged = false;
    for (int it = 0; it < max_iterations; ++it) {
      Vector<Scalar> y = lu.solve(x);
      for (const auto& v : found) y -= v.dot(y) * v;
      const Scalar growth = y.norm();
      if (!std::isfinite(double(growth)) || growth == Scalar(0)) {
        throw NumericsError("inverse iteration broke down at level " + std::to_string(j), j);
      }
      y /= growth;
      if (y.dot(x) < Scalar(0)) y = -y;
      const Scalar change = (y - x).norm();
      x = std::move(y);
      if (it > 0 && change < Scalar(1e-12) * std::sqrt(Scalar(n))) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw NumericsError("inverse iteration did not converge at level " + std::to_string(j), j);
    }
    found.push_back(x);
    GridFunction<Scalar> state(op.grid, x / std::sqrt(h));
    pairs.push_back({energies[j], normalized(std::move(state))});
  }
  return pairs;
}

/// Eliminates the h^2 term: (4 E(h/2) - E(h)) / 3 level by level.
template <typename Scalar, typename Mass, typename Potential>
Vector<Scalar> richardson_refine(Mass&& mass, Potential&& potential, const Grid<Scalar>& grid,
                                 std::ptrdiff_t k) {
  const Vector<Scalar> coarse = lowest_eigenvalues(discretize(mass, potential, grid), k);
  const Vector<Scalar> fine = lowest_eigenvalues(discretize(mass, potential, grid.refined()), k);
  return (Scalar(4) * fine - coarse) / Scalar(3);
}

}  // namespace gsip
