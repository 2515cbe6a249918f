#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "archetypal/geometry.hpp"

namespace archetypal {
namespace {

constexpr double kGapTol = 1e-14;     // relative to the largest ||v_j - u||^2
constexpr double kWeightFloor = 1e-15;

// Minimum-norm point of the affine hull of the columns `active` of `p`.
// Returns barycentric coefficients (summing to one).
Vector affine_min_norm(const Matrix& p, const std::vector<Index>& active) {
  const Index k = static_cast<Index>(active.size());
  Vector coef(k);
  if (k == 1) {
    coef(0) = 1.0;
    return coef;
  }
  const Index d = p.rows();
  Matrix diff(d, k - 1);
  const auto base = p.col(active[0]);
  for (Index j = 1; j < k; ++j) diff.col(j - 1) = p.col(active[j]) - base;
  const Vector beta = diff.colPivHouseholderQr().solve(-base);
  coef(0) = 1.0 - beta.sum();
  coef.tail(k - 1) = beta;
  return coef;
}

// Wolfe's minimum-norm-point algorithm on the translated points
// p_j = v_j - u. Returns weights over all m points.
ProjectionResult wolfe(const Eigen::Ref<const Vector>& u, const Matrix& vt,
                       std::size_t max_iter) {
  const Index m = vt.cols();
  Matrix p = vt.colwise() - u;
  const Vector norms2 = p.colwise().squaredNorm().transpose();
  const double scale = std::max(norms2.maxCoeff(), 1e-300);

  std::vector<Index> active;
  std::vector<double> lambda;
  Index start = 0;
  norms2.minCoeff(&start);
  active.push_back(start);
  lambda.push_back(1.0);
  Vector x = p.col(start);

  ProjectionResult res;
  std::size_t iter = 0;
  bool done = false;
  while (!done) {
    if (++iter > max_iter) break;
    const double xx = x.squaredNorm();
    if (xx <= kGapTol * scale * 1e-2) {
      done = true;
      break;
    }
    const Vector dots = p.transpose() * x;
    Index j = 0;
    const double best = dots.minCoeff(&j);
    if (xx - best <= kGapTol * scale) {
      done = true;
      break;
    }
    if (std::find(active.begin(), active.end(), j) != active.end()) {
      // Rounding stall: the most improving point is already active.
      done = true;
      break;
    }
    active.push_back(j);
    lambda.push_back(0.0);

    // Minor cycle: move towards the affine minimiser, dropping points whose
    // weight would turn negative.
    while (true) {
      if (++iter > max_iter) break;
      const Vector alpha = affine_min_norm(p, active);
      if ((alpha.array() > kWeightFloor).all()) {
        for (std::size_t s = 0; s < active.size(); ++s) lambda[s] = alpha(s);
        break;
      }
      double theta = 1.0;
      for (std::size_t s = 0; s < active.size(); ++s) {
        if (alpha(s) <= kWeightFloor) {
          const double denom = lambda[s] - alpha(s);
          if (denom > 0.0) theta = std::min(theta, lambda[s] / denom);
        }
      }
      for (std::size_t s = 0; s < active.size(); ++s) {
        lambda[s] += theta * (alpha(s) - lambda[s]);
      }
      // Drop the vanishing weights; keep at least one point.
      std::vector<Index> keep_idx;
      std::vector<double> keep_w;
      for (std::size_t s = 0; s < active.size(); ++s) {
        if (lambda[s] > kWeightFloor) {
          keep_idx.push_back(active[s]);
          keep_w.push_back(lambda[s]);
        }
      }
      if (keep_idx.empty()) {
        std::size_t arg = 0;
        for (std::size_t s = 1; s < active.size(); ++s) {
          if (lambda[s] > lambda[arg]) arg = s;
        }
        keep_idx.push_back(active[arg]);
        keep_w.push_back(1.0);
      }
      active.swap(keep_idx);
      lambda.swap(keep_w);
      double total = 0.0;
      for (double w : lambda) total += w;
      for (double& w : lambda) w /= total;
    }
    x.setZero();
    for (std::size_t s = 0; s < active.size(); ++s) {
      x += lambda[s] * p.col(active[s]);
    }
  }

  res.weights = Vector::Zero(m);
  double total = 0.0;
  for (std::size_t s = 0; s < active.size(); ++s) {
    const double w = std::max(lambda[s], 0.0);
    res.weights(active[s]) = w;
    total += w;
  }
  res.weights /= total;
  res.iterations = std::min(iter, max_iter);
  res.converged = done;
  return res;
}

double largest_eigenvalue(const Matrix& vt) {
  // Power iteration on V V^T (m x m) through vt (d x m).
  const Index m = vt.cols();
  Vector q = Vector::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
  double lam = 0.0;
  for (int it = 0; it < 200; ++it) {
    Vector z = vt.transpose() * (vt * q);
    const double nz = z.norm();
    if (nz == 0.0) return 0.0;
    const double next = q.dot(z);
    q = z / nz;
    if (std::abs(next - lam) <= 1e-12 * std::abs(next)) {
      lam = next;
      break;
    }
    lam = next;
  }
  // Power iteration approaches from below; pad so 1/L stays a safe step.
  return lam * 1.01;
}

ProjectionResult fista(const Eigen::Ref<const Vector>& u, const Matrix& vt,
                       double tol, std::size_t max_iter) {
  const Index m = vt.cols();
  const double lip = 2.0 * largest_eigenvalue(vt);
  auto objective = [&](const Vector& w) { return (vt * w - u).squaredNorm(); };
  auto gradient = [&](const Vector& w) {
    return Vector(2.0 * (vt.transpose() * (vt * w - u)));
  };
  const double scale =
      std::max((vt.colwise() - u).colwise().squaredNorm().maxCoeff(), 1e-300);

  ProjectionResult res;
  Vector w = Vector::Constant(m, 1.0 / static_cast<double>(m));
  if (lip == 0.0) {
    res.weights = w;
    res.converged = true;
    return res;
  }
  Vector y = w;
  double t = 1.0;
  double f = objective(w);
  int quiet = 0;
  std::size_t iter = 0;
  while (iter < max_iter) {
    ++iter;
    const Vector next = project_simplex(y - gradient(y) / lip);
    const double fn = objective(next);
    if (fn > f && t > 1.0) {
      // Adaptive restart: drop the momentum and step from the last iterate.
      y = w;
      t = 1.0;
      continue;
    }
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = next + ((t - 1.0) / tn) * (next - w);
    t = tn;
    const double change = std::abs(f - fn);
    w = next;
    f = fn;
    if (change <= tol * std::max(f, 1e-6 * scale)) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
  }
  res.weights = w;
  res.iterations = iter;
  res.converged = quiet >= 3;
  return res;
}

void finish(ProjectionResult& res, const Eigen::Ref<const Vector>& u,
            const Matrix& vt) {
  res.point = vt * res.weights;
  res.sq_distance = (u - res.point).squaredNorm();
}

ProjectionResult dispatch(const Eigen::Ref<const Vector>& u, const Matrix& vt,
                          const HullOptions& opts) {
  ProjectionResult res;
  switch (opts.algorithm) {
    case HullAlgorithm::active_set:
      res = wolfe(u, vt, opts.max_iter);
      break;
    case HullAlgorithm::accelerated_gradient:
      res = fista(u, vt, opts.tol, opts.max_iter);
      break;
  }
  finish(res, u, vt);
  return res;
}

void check_hull_inputs(const Eigen::Ref<const Vector>& u, const Matrix& v,
                       const HullOptions& opts) {
  if (v.rows() < 1 || v.cols() < 1) {
    throw InvalidInput("project_convex_hull: empty vertex set");
  }
  if (u.size() != v.cols()) {
    throw InvalidInput("project_convex_hull: dimension mismatch");
  }
  if (!(opts.tol > 0.0)) throw InvalidInput("project_convex_hull: tol <= 0");
  if (!u.allFinite() || !v.allFinite()) {
    throw InvalidInput("project_convex_hull: non-finite input");
  }
}

}  // namespace

ProjectionResult project_convex_hull(const Eigen::Ref<const Vector>& u,
                                     const Matrix& v,
                                     const HullOptions& opts) {
  check_hull_inputs(u, v, opts);
  const Matrix vt = v.transpose();
  return dispatch(u, vt, opts);
}

HullProjector::HullProjector(Matrix vertices, HullOptions opts)
    : v_(std::move(vertices)), vt_(v_.transpose()), opts_(opts) {
  if (v_.rows() < 1 || v_.cols() < 1) {
    throw InvalidInput("HullProjector: empty vertex set");
  }
  require_finite(v_, "hull vertices");
  if (!(opts_.tol > 0.0)) throw InvalidInput("HullProjector: tol <= 0");
}

ProjectionResult HullProjector::project(
    const Eigen::Ref<const Vector>& u) const {
  if (u.size() != v_.cols()) {
    throw InvalidInput("HullProjector: dimension mismatch");
  }
  if (!u.allFinite()) throw InvalidInput("HullProjector: non-finite query");
  return dispatch(u, vt_, opts_);
}

BatchProjection project_rows(const Matrix& u, const HullProjector& hull,
                             Exec exec) {
  require_same_columns(u, hull.vertices(), "project_rows");
  const Index k = u.rows();
  BatchProjection out;
  out.points.resize(k, u.cols());
  out.weights.resize(k, hull.vertices().rows());
  out.sq_distances.resize(k);
  std::vector<char> converged(static_cast<std::size_t>(k), 1);

  auto one = [&](Index i) {
    const ProjectionResult r = hull.project(u.row(i).transpose());
    out.points.row(i) = r.point.transpose();
    out.weights.row(i) = r.weights.transpose();
    out.sq_distances(i) = r.sq_distance;
    converged[static_cast<std::size_t>(i)] = r.converged ? 1 : 0;
  };

  if (exec == Exec::serial) {
    for (Index i = 0; i < k; ++i) one(i);
  } else {
#pragma omp parallel for schedule(dynamic, 4)
    for (Index i = 0; i < k; ++i) one(i);
  }
  out.all_converged =
      std::all_of(converged.begin(), converged.end(), [](char c) { return c; });
  return out;
}

}  // namespace archetypal
