#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>
#include <vector>

#include "archetypal/geometry.hpp"
#include "archetypal/risk.hpp"
#include "archetypal/rng.hpp"
#include "archetypal/uniqueness.hpp"

namespace archetypal {
namespace {

constexpr double kPenalty = 1e3;
constexpr double kPi = 3.14159265358979323846;

struct Problem {
  const DataMatrix& x0;
  const ArchetypeSet& h0;
  Vector centroid;
  double radius = 1.0;
  double d_h0_x0 = 0.0;  // D(H0, X0)^1/2
  double min_den = 0.0;
};

// Smallest s >= 1 such that c + s (H - c) contains X0, or a negative value
// if no such s exists (c not strictly inside conv(H)).
double expansion_factor(const Problem& p, const ArchetypeSet& h) {
  const Index r = h.rows();
  const Index d = h.cols();
  if (r == d + 1) {
    Matrix a(d + 1, d + 1);
    a.topRows(d) = h.transpose();
    a.row(d).setOnes();
    Eigen::FullPivLU<Matrix> lu(a);
    if (!lu.isInvertible()) return -1.0;
    Vector rhs(d + 1);
    rhs << p.centroid, 1.0;
    const Vector bc = lu.solve(rhs);
    if ((bc.array() <= 1e-12).any()) return -1.0;
    double s = 1.0;
    for (Index i = 0; i < p.x0.rows(); ++i) {
      rhs << p.x0.row(i).transpose(), 1.0;
      const Vector bx = lu.solve(rhs);
      for (Index j = 0; j <= d; ++j) s = std::max(s, (bc(j) - bx(j)) / bc(j));
    }
    return s;
  }
  auto scaled = [&](double s) {
    return ArchetypeSet((s * (h.rowwise() - p.centroid.transpose())).rowwise() +
                        p.centroid.transpose());
  };
  if (hull_contains(h, p.x0, 1e-12)) return 1.0;
  double hi = 2.0;
  while (!hull_contains(scaled(hi), p.x0, 1e-12)) {
    hi *= 2.0;
    if (hi > 1e6) return -1.0;
  }
  double lo = hi / 2.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (hull_contains(scaled(mid), p.x0, 1e-12) ? hi : lo) = mid;
  }
  return hi;
}

struct Evaluation {
  double value = kPenalty;
  bool feasible = false;
  ArchetypeSet h;
};

Evaluation evaluate(const Problem& p, const ArchetypeSet& raw) {
  Evaluation e;
  if (!raw.allFinite()) return e;
  const double s = expansion_factor(p, raw);
  if (s < 0.0) {
    // Push the search back toward the data centroid.
    e.value = kPenalty + (raw.colwise().mean().transpose() - p.centroid).norm() / p.radius;
    return e;
  }
  e.h = (s * (raw.rowwise() - p.centroid.transpose())).rowwise() +
        p.centroid.transpose();
  const double den = std::sqrt(dd_set_set(e.h, p.h0, Exec::serial).value) +
                     std::sqrt(dd_set_set(p.h0, e.h, Exec::serial).value);
  if (den < p.min_den) return e;
  const double num = std::sqrt(dd_set_set(e.h, p.x0, Exec::serial).value) - p.d_h0_x0;
  e.value = num / den;
  e.feasible = true;
  return e;
}

// Random orthonormal pair spanning the plane of rotation.
std::pair<Vector, Vector> random_plane(CounterRng& rng, Index d) {
  Vector u(d), v(d);
  for (Index i = 0; i < d; ++i) u(i) = rng.normal();
  u.normalize();
  for (;;) {
    for (Index i = 0; i < d; ++i) v(i) = rng.normal();
    v -= v.dot(u) * u;
    if (v.norm() > 1e-6) break;
  }
  v.normalize();
  return {u, v};
}

struct RestartResult {
  double best = std::numeric_limits<double>::infinity();
  ArchetypeSet best_h;
  std::size_t evals = 0;
  std::size_t feasible = 0;
  std::vector<VisitedCandidate> visited;
};

RestartResult run_restart(const Problem& p, const AlphaSearchConfig& cfg,
                          std::size_t restart) {
  const Index r = p.h0.rows();
  const Index d = p.h0.cols();
  const Index m = r * d;
  CounterRng rng(cfg.seed, 1000 + restart);
  RestartResult out;

  // Start: H0 rotated about the centroid, jittered and inflated.
  ArchetypeSet start = p.h0.rowwise() - p.centroid.transpose();
  if (d >= 2) {
    const double angle = 2.0 * kPi * rng.uniform();
    Vector u(d), v(d);
    if (d == 2) {
      u << 1.0, 0.0;
      v << 0.0, 1.0;
    } else {
      std::tie(u, v) = random_plane(rng, d);
    }
    const double ca = std::cos(angle) - 1.0;
    const double sa = std::sin(angle);
    for (Index j = 0; j < r; ++j) {
      const Vector row = start.row(j).transpose();
      const double a = row.dot(u);
      const double b = row.dot(v);
      start.row(j) += ((ca * a - sa * b) * u + (sa * a + ca * b) * v).transpose();
    }
  }
  for (Index j = 0; j < r; ++j) {
    for (Index k = 0; k < d; ++k) start(j, k) += cfg.jitter * p.radius * rng.normal();
  }
  start *= 1.0 + 0.5 * rng.uniform();
  start.rowwise() += p.centroid.transpose();
  const double s0 = expansion_factor(p, start);
  if (s0 > 0.0) {
    start = (s0 * (start.rowwise() - p.centroid.transpose())).rowwise() +
            p.centroid.transpose();
  }

  auto f = [&](const Vector& theta) {
    const ArchetypeSet h = Eigen::Map<const Matrix>(theta.data(), r, d);
    const Evaluation e = evaluate(p, h);
    ++out.evals;
    if (e.feasible) {
      ++out.feasible;
      if (e.value < out.best) {
        out.best = e.value;
        out.best_h = e.h;
      }
      if (cfg.record_visits) out.visited.push_back({e.h, e.value});
    }
    return e.value;
  };

  // Nelder-Mead with standard coefficients.
  std::vector<Vector> simplex(static_cast<std::size_t>(m + 1));
  std::vector<double> fv(simplex.size());
  simplex[0] = Eigen::Map<const Vector>(start.data(), m);
  const double step = 0.1 * p.radius;
  for (Index i = 0; i < m; ++i) {
    simplex[static_cast<std::size_t>(i + 1)] = simplex[0];
    simplex[static_cast<std::size_t>(i + 1)](i) += step;
  }
  for (std::size_t i = 0; i < simplex.size(); ++i) fv[i] = f(simplex[i]);

  std::vector<std::size_t> order(simplex.size());
  while (out.evals < cfg.evals_per_restart) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];
    Vector centre = Vector::Zero(m);
    for (std::size_t i = 0; i + 1 < order.size(); ++i) centre += simplex[order[i]];
    centre /= static_cast<double>(m);

    const Vector xr = centre + (centre - simplex[worst]);
    const double fr = f(xr);
    if (fr < fv[best]) {
      const Vector xe = centre + 2.0 * (centre - simplex[worst]);
      const double fe = f(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        fv[worst] = fe;
      } else {
        simplex[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      simplex[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    const bool outside = fr < fv[worst];
    const Vector xc = outside ? Vector(centre + 0.5 * (xr - centre))
                              : Vector(centre + 0.5 * (simplex[worst] - centre));
    const double fc = f(xc);
    if (fc < std::min(fr, fv[worst])) {
      simplex[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    for (std::size_t i : order) {
      if (i == best) continue;
      simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
      fv[i] = f(simplex[i]);
    }
    const double spread = (simplex[worst] - simplex[best]).norm();
    if (spread < 1e-12 * p.radius) break;
  }
  return out;
}

}  // namespace

AlphaEstimate estimate_alpha(const DataMatrix& x0, const ArchetypeSet& h0,
                             const AlphaSearchConfig& search) {
  require_finite(x0, "X0");
  require_finite(h0, "H0");
  require_same_columns(h0, x0, "H0 and X0");
  if (h0.rows() < 2 || x0.rows() < 1) {
    throw InvalidInput("estimate_alpha: need at least two archetypes and one point");
  }
  if (search.restarts == 0 || search.evals_per_restart == 0) {
    throw InvalidInput("estimate_alpha: empty search budget");
  }
  if (!hull_contains(h0, x0)) {
    throw InvalidInput("estimate_alpha: conv(X0) is not inside conv(H0)");
  }

  Problem p{x0, h0, x0.colwise().mean().transpose()};
  p.radius = std::max((h0.rowwise() - p.centroid.transpose()).rowwise().norm().maxCoeff(),
                      1e-300);
  p.d_h0_x0 = std::sqrt(dd_set_set(h0, x0, Exec::serial).value);
  p.min_den = search.min_denominator * p.radius;

  const std::size_t restarts = search.restarts;
  std::vector<RestartResult> results(restarts);
  if (search.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(restarts); ++i) {
      results[static_cast<std::size_t>(i)] =
          run_restart(p, search, static_cast<std::size_t>(i));
    }
  } else {
    for (std::size_t i = 0; i < restarts; ++i) results[i] = run_restart(p, search, i);
  }

  AlphaEstimate out;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < restarts; ++i) {
    RestartResult& res = results[i];
    out.search_evals += res.evals;
    out.feasible_evals += res.feasible;
    if (res.best < best) {  // strict: lowest restart index wins ties
      best = res.best;
      out.witness_h = res.best_h;
    }
    if (search.record_visits) {
      for (auto& v : res.visited) out.visited.push_back(std::move(v));
    }
  }
  if (out.feasible_evals == 0) {
    out.raw_min = 1.0;
    out.alpha_hat = 1.0;
    out.witness_h = h0;
    return out;
  }
  out.raw_min = best;
  out.alpha_hat = std::clamp(best, 0.0, 1.0);
  return out;
}

}  // namespace archetypal
