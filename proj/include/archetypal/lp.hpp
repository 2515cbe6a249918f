#pragma once

#include "archetypal/types.hpp"

namespace archetypal {

enum class LpStatus { optimal, unbounded, iteration_limit };

struct LpResult {
  LpStatus status = LpStatus::optimal;
  Vector solution;
  double objective = 0.0;
  std::size_t pivots = 0;
};

/// Dense tableau simplex for
///   maximise c^T y  subject to  A y <= b,  y >= 0,
/// with b >= 0 so the slack basis is feasible. Bland's rule prevents
/// cycling.
LpResult solve_lp_max(const Matrix& a, const Vector& b, const Vector& c,
                      std::size_t max_pivots = 100000);

}  // namespace archetypal
