// Independent reference computations shared by the unit and acceptance
// tests. None of these call into the library's solvers.
#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include "archetypal/rng.hpp"
#include "archetypal/types.hpp"

namespace oracle {

using archetypal::Index;
using archetypal::Matrix;
using archetypal::Vector;

// Minimum of ||V^T w - u||^2 over a regular grid on the simplex (m <= 3).
inline double grid_hull_sq_distance(const Vector& u, const Matrix& v, double step = 1e-3) {
  const Index m = v.rows();
  const long k = std::lround(1.0 / step);
  double best = std::numeric_limits<double>::infinity();
  if (m == 1) return (v.row(0).transpose() - u).squaredNorm();
  if (m == 2) {
    for (long i = 0; i <= k; ++i) {
      const double a = static_cast<double>(i) / static_cast<double>(k);
      best = std::min(best, (a * v.row(0) + (1 - a) * v.row(1) - u.transpose()).squaredNorm());
    }
    return best;
  }
  for (long i = 0; i <= k; ++i) {
    for (long j = 0; i + j <= k; ++j) {
      const double a = static_cast<double>(i) / static_cast<double>(k);
      const double b = static_cast<double>(j) / static_cast<double>(k);
      const double c = 1.0 - a - b;
      best = std::min(best,
                      (a * v.row(0) + b * v.row(1) + c * v.row(2) - u.transpose()).squaredNorm());
    }
  }
  return best;
}

// Central finite differences of a scalar function of a matrix.
inline Matrix central_difference(const std::function<double(const Matrix&)>& f,
                                 const Matrix& at, double h = 1e-6) {
  Matrix g(at.rows(), at.cols());
  Matrix p = at;
  for (Index i = 0; i < at.rows(); ++i) {
    for (Index j = 0; j < at.cols(); ++j) {
      p(i, j) = at(i, j) + h;
      const double fp = f(p);
      p(i, j) = at(i, j) - h;
      const double fm = f(p);
      p(i, j) = at(i, j);
      g(i, j) = (fp - fm) / (2.0 * h);
    }
  }
  return g;
}

inline Matrix gaussian(archetypal::CounterRng& rng, Index rows, Index cols,
                       double scale = 1.0) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = scale * rng.normal();
  }
  return m;
}

inline Index uniform_int(archetypal::CounterRng& rng, Index lo, Index hi) {
  return lo + static_cast<Index>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
}

}  // namespace oracle
