#include <cmath>

#include "solver_internal.hpp"

namespace archetypal {

FitReport fit_altmin(const DataMatrix& x, const ArchetypeSet& h_init,
                     const SolverConfig& cfg) {
  detail::check_solver_inputs(x, h_init, cfg, true);
  const detail::WallTimer timer;
  const double lambda = cfg.lambda;
  const bool constrained = std::isinf(lambda);
  const HullProjector data_hull(x);
  const Index r = h_init.rows();

  FitReport rep;
  Matrix h = h_init;
  RiskEvaluation ev = evaluate_risk(x, data_hull, h, lambda, cfg.exec);
  rep.risk_trace.push_back(ev.risk.total);
  rep.projections_converged = ev.risk.converged;

  detail::StopMonitor monitor(cfg, x);
  std::size_t t = 0;
  while (t < cfg.max_iter) {
    ++t;
    // Weights for the current archetypes come out of the last evaluation.
    const Matrix w = ev.weights;
    for (Index l = 0; l < r; ++l) {
      const double w_tot = w.col(l).squaredNorm();
      if (!(w_tot > 0.0)) {
        // No point uses this archetype: move it to the worst-fitted point.
        const Vector residual = (x - w * h).rowwise().squaredNorm();
        Index worst = 0;
        residual.maxCoeff(&worst);
        h.row(l) = x.row(worst);
        rep.reseeded.emplace_back(t, l);
        continue;
      }
      // Target for h_l given the other archetypes: the w-weighted average of
      // the partial residuals.
      const Matrix partial = x - w * h + w.col(l) * h.row(l);
      const Vector v = (partial.transpose() * w.col(l)) / w_tot;
      const ProjectionResult p = data_hull.project(v);
      rep.projections_converged &= p.converged;
      if (constrained) {
        h.row(l) = p.point.transpose();
      } else {
        h.row(l) = ((w_tot * v + lambda * p.point) / (w_tot + lambda)).transpose();
      }
    }
    detail::require_finite_iterate(h, t, "archetype iterate");

    const double previous = rep.risk_trace.back();
    ev = evaluate_risk(x, data_hull, h, lambda, cfg.exec);
    rep.projections_converged &= ev.risk.converged;
    rep.risk_trace.push_back(ev.risk.total);
    rep.final_grad_norm = ev.gradient_valid
                              ? ev.gradient.norm()
                              : std::numeric_limits<double>::quiet_NaN();
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
