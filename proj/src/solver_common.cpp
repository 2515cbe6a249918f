#include <cmath>

#include "solver_internal.hpp"

namespace archetypal {

void SolverConfig::validate() const {
  if (std::isnan(lambda) || lambda < 0.0) {
    throw InvalidInput("SolverConfig: lambda must be non-negative");
  }
  if (!(rel_tol > 0.0) || !(grad_tol > 0.0) || !(epsilon_step > 0.0)) {
    throw InvalidInput("SolverConfig: tolerances must be positive");
  }
  if (!(step_margin > 1.0)) {
    throw InvalidInput("SolverConfig: step_margin must exceed 1");
  }
  if (!(backtrack_shrink > 0.0 && backtrack_shrink < 1.0)) {
    throw InvalidInput("SolverConfig: backtrack_shrink must be in (0, 1)");
  }
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) {
    throw InvalidInput("SolverConfig: armijo_c must be in (0, 1)");
  }
  if (!(initial_step > 0.0)) {
    throw InvalidInput("SolverConfig: initial_step must be positive");
  }
  if (patience == 0) throw InvalidInput("SolverConfig: patience must be >= 1");
}

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::rel_tol: return "rel_tol";
    case StopReason::grad_tol: return "grad_tol";
    case StopReason::max_iter: return "max_iter";
    case StopReason::zero_risk: return "zero_risk";
  }
  return "unknown";
}

WeightSolve solve_weights(const DataMatrix& x, const ArchetypeSet& h,
                          Exec exec) {
  require_same_columns(x, h, "solve_weights");
  require_finite(x, "X");
  const BatchProjection b = project_rows(x, HullProjector(h), exec);
  return {b.weights, b.all_converged};
}

namespace detail {

StopMonitor::StopMonitor(const SolverConfig& cfg, const DataMatrix& x)
    : cfg_(cfg), floor_(1e-12 * std::max(x.squaredNorm(), 1e-300)) {}

std::optional<StopReason> StopMonitor::update(double previous, double current,
                                              double grad_norm) {
  if (current == 0.0) return StopReason::zero_risk;
  if (std::isfinite(grad_norm) && grad_norm < cfg_.grad_tol) {
    return StopReason::grad_tol;
  }
  const double change = std::abs(previous - current);
  if (change <= cfg_.rel_tol * std::max(std::abs(previous), floor_)) {
    if (++quiet_ >= cfg_.patience) return StopReason::rel_tol;
  } else {
    quiet_ = 0;
  }
  return std::nullopt;
}

void check_solver_inputs(const DataMatrix& x, const ArchetypeSet& h_init,
                         const SolverConfig& cfg, bool allow_infinite_lambda) {
  cfg.validate();
  if (!allow_infinite_lambda && std::isinf(cfg.lambda)) {
    throw InvalidInput("this solver needs a finite lambda");
  }
  if (x.rows() < 1 || x.cols() < 1) throw InvalidInput("empty data matrix");
  if (h_init.rows() < 1) throw InvalidInput("need at least one archetype");
  require_same_columns(x, h_init, "solver");
  require_finite(x, "X");
  require_finite(h_init, "H_init");
}

void require_finite_iterate(const Matrix& m, std::size_t iteration,
                            const char* what) {
  if (!m.allFinite()) {
    throw NumericalFailure(std::string("non-finite ") + what, iteration);
  }
}

}  // namespace detail
}  // namespace archetypal
