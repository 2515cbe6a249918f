#include <cmath>

#include "solver_internal.hpp"

namespace archetypal {

double palm_objective(const DataMatrix& x, const HullProjector& data_hull,
                      const ArchetypeSet& h, const WeightMatrix& w,
                      double lambda, Exec exec) {
  const double coupling = (x - w * h).squaredNorm();
  if (lambda == 0.0) return coupling;
  return lambda * dd_set_set(h, data_hull, exec).value + coupling;
}

FitReport fit_palm(const DataMatrix& x, const ArchetypeSet& h_init,
                   const SolverConfig& cfg) {
  detail::check_solver_inputs(x, h_init, cfg, false);
  const detail::WallTimer timer;
  const double lambda = cfg.lambda;
  const HullProjector data_hull(x);

  FitReport rep;
  Matrix h = h_init;
  RiskEvaluation ev = evaluate_risk(x, data_hull, h, lambda, cfg.exec);
  Matrix w = ev.weights;
  rep.risk_trace.push_back(ev.risk.total);
  rep.psi_trace.push_back(lambda * ev.risk.reg_term + (x - w * h).squaredNorm());
  rep.projections_converged = ev.risk.converged;

  detail::StopMonitor monitor(cfg, x);
  std::size_t k = 0;
  while (k < cfg.max_iter) {
    ++k;
    // Archetype block: linearised coupling step, then the closed-form prox of
    // lambda * D(.; X), a blend towards the projection onto conv(X).
    const double gamma1 = std::max(cfg.step_margin * (w.transpose() * w).norm(),
                                   cfg.epsilon_step);
    Matrix h_tilde = h - (w.transpose() * (w * h - x)) / gamma1;
    detail::require_finite_iterate(h_tilde, k, "archetype iterate");
    if (lambda > 0.0) {
      const BatchProjection proj = project_rows(h_tilde, data_hull, cfg.exec);
      rep.projections_converged &= proj.all_converged;
      h = h_tilde - (lambda / (lambda + gamma1)) * (h_tilde - proj.points);
    } else {
      h = h_tilde;
    }

    // Weight block: projected gradient step with the updated archetypes.
    const double gamma2 =
        cfg.step_margin * std::max((h * h.transpose()).norm(), cfg.epsilon_step);
    w = w - ((w * h - x) * h.transpose()) / gamma2;
    project_rows_simplex(w);
    detail::require_finite_iterate(w, k, "weight iterate");

    const double previous = rep.risk_trace.back();
    ev = evaluate_risk(x, data_hull, h, lambda, cfg.exec);
    rep.projections_converged &= ev.risk.converged;
    rep.risk_trace.push_back(ev.risk.total);
    rep.psi_trace.push_back(lambda * ev.risk.reg_term +
                            (x - w * h).squaredNorm());
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
  rep.iterations = k;
  rep.archetypes = h;
  rep.weights = ev.weights;
  rep.wall_seconds = timer.seconds();
  return rep;
}

}  // namespace archetypal
