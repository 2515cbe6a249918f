#pragma once

#include <vector>

#include "archetypal/types.hpp"

namespace archetypal {

/// Euclidean projection of `v` onto the probability simplex (sort and
/// threshold, O(m log m)). Throws InvalidInput on empty or non-finite input.
Vector project_simplex(const Eigen::Ref<const Vector>& v);

/// Projects every row of `m` onto the simplex in place.
void project_rows_simplex(Matrix& m);

enum class HullAlgorithm {
  // Wolfe's minimum-norm-point active-set method; exact up to rounding.
  active_set,
  // FISTA on the simplex-constrained least squares with adaptive restart.
  accelerated_gradient,
};

struct HullOptions {
  HullAlgorithm algorithm = HullAlgorithm::active_set;
  double tol = 1e-10;
  std::size_t max_iter = 10000;
};

struct ProjectionResult {
  Vector point;        // V^T weights
  Vector weights;      // on the simplex, length m
  double sq_distance = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Closest point to `u` in the convex hull of the rows of `v`.
/// Non-convergence is reported through `converged`, never by a silently
/// wrong result.
ProjectionResult project_convex_hull(const Eigen::Ref<const Vector>& u,
                                     const Matrix& v,
                                     const HullOptions& opts = {});

/// Repeated projections onto one hull. Caches the hull and the scratch
/// state of the active-set method; cheap to copy per thread.
class HullProjector {
 public:
  explicit HullProjector(Matrix vertices, HullOptions opts = {});

  ProjectionResult project(const Eigen::Ref<const Vector>& u) const;

  const Matrix& vertices() const { return v_; }
  const HullOptions& options() const { return opts_; }

 private:
  Matrix v_;
  Matrix vt_;  // d x m, column access for the active-set loop
  HullOptions opts_;
};

/// Batched projection of the rows of `u` onto conv(v). Serial and parallel
/// paths give identical results.
struct BatchProjection {
  Matrix points;   // k x d
  Matrix weights;  // k x m
  Vector sq_distances;
  bool all_converged = true;
};

BatchProjection project_rows(const Matrix& u, const HullProjector& hull,
                             Exec exec = Exec::parallel);

/// Distance to the affine hull of a fixed anchor set. The anchors are
/// factored once (column-pivoted QR of the difference vectors) so that many
/// queries are cheap.
class AffineHull {
 public:
  explicit AffineHull(const Matrix& anchors, double rank_tol = 1e-10);

  double distance(const Eigen::Ref<const Vector>& u) const;

  // Number of affinely independent anchors that span the hull.
  Index independent_count() const { return rank_ + 1; }
  bool degenerate() const { return degenerate_; }

 private:
  Vector origin_;
  Matrix basis_;  // d x rank, orthonormal columns
  Index rank_ = 0;
  bool degenerate_ = false;
};

struct AffineDistance {
  double distance = 0.0;
  bool degenerate = false;  // anchors were affinely dependent
};

AffineDistance distance_to_affine(const Eigen::Ref<const Vector>& u,
                                  const Matrix& anchors);

/// True when the rows of `m` are affinely independent (relative tolerance on
/// the singular values of the difference matrix).
bool affinely_independent(const Matrix& m, double rel_tol = 1e-10);

}  // namespace archetypal
