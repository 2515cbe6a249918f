#include <algorithm>
#include <cmath>

#include "archetypal/rng.hpp"
#include "solver_internal.hpp"

namespace archetypal {

Matrix sgd_direction(const DataMatrix& x, const HullProjector& data_hull,
                     const ArchetypeSet& h, double lambda,
                     const std::vector<Index>& sample, Exec exec) {
  if (sample.empty()) throw InvalidInput("sgd_direction: empty sample");
  std::vector<Index> rows(sample);
  std::sort(rows.begin(), rows.end());
  Matrix xs(static_cast<Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    xs.row(static_cast<Index>(i)) = x.row(rows[i]);
  }
  const BatchProjection on_h = project_rows(xs, HullProjector(h), exec);
  const BatchProjection on_x = project_rows(h, data_hull, exec);
  const double rescale = 2.0 * static_cast<double>(x.rows()) /
                         static_cast<double>(rows.size());
  return rescale * on_h.weights.transpose() * (on_h.points - xs) +
         2.0 * lambda * (h - on_x.points);
}

constexpr std::size_t kMaxRejected = 50;

FitReport fit_sgd(const DataMatrix& x, const ArchetypeSet& h_init,
                  const SolverConfig& cfg) {
  detail::check_solver_inputs(x, h_init, cfg, false);
  const Index n = x.rows();
  const Index batch = cfg.sgd_batch == 0
                          ? std::min<Index>(n, 50)
                          : static_cast<Index>(cfg.sgd_batch);
  if (batch < 1 || batch > n) {
    throw InvalidInput("fit_sgd: sgd_batch must be in [1, n]");
  }
  const detail::WallTimer timer;
  const double lambda = cfg.lambda;
  const HullProjector data_hull(x);
  CounterRng rng(cfg.seed, /*stream=*/0x5344);

  FitReport rep;
  Matrix h = h_init;
  RiskEvaluation ev = evaluate_risk(x, data_hull, h, lambda, cfg.exec);
  rep.risk_trace.push_back(ev.risk.total);
  rep.projections_converged = ev.risk.converged;
  rep.final_grad_norm =
      ev.gradient_valid ? ev.gradient.norm() : std::numeric_limits<double>::quiet_NaN();

  detail::StopMonitor monitor(cfg, x);
  double last_step = cfg.initial_step;
  std::size_t rejected = 0;
  std::size_t t = 0;
  while (t < cfg.max_iter) {
    ++t;
    const std::vector<Index> sample = rng.sample_without_replacement(n, batch);
    const Matrix g = sgd_direction(x, data_hull, h, lambda, sample, cfg.exec);
    detail::require_finite_iterate(g, t, "descent direction");

    // Armijo backtracking on the full risk. Trial steps start from twice the
    // last accepted step, capped by initial_step.
    const double slope =
        ev.gradient_valid ? (g.array() * ev.gradient.array()).sum()
                          : g.squaredNorm();
    double step = std::min(cfg.initial_step, 2.0 * last_step);
    bool moved = false;
    if (slope > 0.0) {
      for (int tries = 0; tries < 60; ++tries) {
        const Matrix trial = h - step * g;
        RiskEvaluation next = evaluate_risk(x, data_hull, trial, lambda, cfg.exec);
        if (next.risk.total <= ev.risk.total - cfg.armijo_c * step * slope) {
          h = trial;
          ev = std::move(next);
          last_step = step;
          moved = true;
          break;
        }
        step *= cfg.backtrack_shrink;
      }
    }
    const double previous = rep.risk_trace.back();
    rep.risk_trace.push_back(ev.risk.total);
    rep.projections_converged &= ev.risk.converged;
    rep.final_grad_norm = ev.gradient_valid
                              ? ev.gradient.norm()
                              : std::numeric_limits<double>::quiet_NaN();
    // A sampled direction that is not a descent direction for the full risk
    // leaves H unchanged; such iterations do not count as stagnation unless
    // they persist.
    rejected = moved ? 0 : rejected + 1;
    if (rejected >= kMaxRejected) {
      rep.stop_reason = StopReason::rel_tol;
      rep.converged = true;
      break;
    }
    if (!moved) continue;
    if (auto stop = monitor.update(previous, ev.risk.total,
                                   rep.final_grad_norm)) {
      rep.stop_reason = *stop;
      rep.converged = true;
      break;
    }
  }
  rep.iterations = t;
  rep.archetypes = h;
  rep.weights = ev.weights;
  rep.wall_seconds = timer.seconds();
  return rep;
}

}  // namespace archetypal
