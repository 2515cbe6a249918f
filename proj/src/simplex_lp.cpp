#include <cmath>
#include <limits>
#include <vector>

#include "archetypal/lp.hpp"

namespace archetypal {

LpResult solve_lp_max(const Matrix& a, const Vector& b, const Vector& c,
                      std::size_t max_pivots) {
  const Index m = a.rows();
  const Index nv = a.cols();
  if (b.size() != m || c.size() != nv) {
    throw InvalidInput("solve_lp_max: dimension mismatch");
  }
  if ((b.array() < 0.0).any()) {
    throw InvalidInput("solve_lp_max: right-hand side must be non-negative");
  }
  constexpr double eps = 1e-12;

  // Columns: decision variables, slacks, right-hand side. Last row holds the
  // reduced costs.
  const Index cols = nv + m + 1;
  Matrix t = Matrix::Zero(m + 1, cols);
  t.topLeftCorner(m, nv) = a;
  t.block(0, nv, m, m).setIdentity();
  t.topRightCorner(m, 1) = b;
  t.bottomLeftCorner(1, nv) = -c.transpose();

  std::vector<Index> basis(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = nv + i;

  LpResult res;
  while (true) {
    Index enter = -1;
    for (Index j = 0; j < nv + m; ++j) {
      if (t(m, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < m; ++i) {
      if (t(i, enter) > eps) {
        const double ratio = t(i, cols - 1) / t(i, enter);
        if (ratio < best - eps ||
            (ratio <= best + eps && leave >= 0 &&
             basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
    }
    if (leave < 0) {
      res.status = LpStatus::unbounded;
      return res;
    }
    if (++res.pivots > max_pivots) {
      res.status = LpStatus::iteration_limit;
      return res;
    }
    t.row(leave) /= t(leave, enter);
    for (Index i = 0; i <= m; ++i) {
      if (i != leave && t(i, enter) != 0.0) {
        t.row(i) -= t(i, enter) * t.row(leave);
      }
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  res.solution = Vector::Zero(nv);
  for (Index i = 0; i < m; ++i) {
    const Index var = basis[static_cast<std::size_t>(i)];
    if (var < nv) res.solution(var) = t(i, cols - 1);
  }
  res.objective = c.dot(res.solution);
  return res;
}

}  // namespace archetypal
