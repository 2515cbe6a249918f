#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "archetypal/risk.hpp"

namespace archetypal {

struct SolverConfig {
  // +infinity is accepted by fit_altmin only (archetypes constrained to
  // conv(X)).
  double lambda = 1.0;
  std::size_t max_iter = 5000;
  double rel_tol = 1e-9;       // relative risk change ...
  std::size_t patience = 5;    // ... sustained over this many iterations
  double grad_tol = 1e-8;
  double epsilon_step = 1e-8;  // floor on the PALM step moduli
  double step_margin = 1.01;   // strict inequality on the moduli
  std::size_t sgd_batch = 0;   // 0 selects min(n, 50)
  double backtrack_shrink = 0.5;
  double armijo_c = 1e-4;
  double initial_step = 1.0;
  std::uint64_t seed = 0;
  Exec exec = Exec::parallel;

  void validate() const;
};

enum class StopReason { rel_tol, grad_tol, max_iter, zero_risk };

std::string to_string(StopReason reason);

struct FitReport {
  ArchetypeSet archetypes;
  WeightMatrix weights;
  std::vector<double> risk_trace;  // total risk per iterate, initial first
  std::vector<double> psi_trace;   // PALM only: Psi(H^k, W^k)
  double final_grad_norm = std::numeric_limits<double>::quiet_NaN();
  std::size_t iterations = 0;
  bool converged = false;
  StopReason stop_reason = StopReason::max_iter;
  double wall_seconds = 0.0;
  bool projections_converged = true;
  // Alternating minimization: archetypes re-seeded because no data point
  // used them (iteration, archetype index).
  std::vector<std::pair<std::size_t, Index>> reseeded;
};

struct WeightSolve {
  WeightMatrix weights;
  bool converged = true;
};

/// Row-wise simplex-constrained least squares: row i of the result minimises
/// ||H^T w - x_i|| over the simplex.
WeightSolve solve_weights(const DataMatrix& x, const ArchetypeSet& h,
                          Exec exec = Exec::parallel);

/// Proximal alternating linearized minimisation of Psi(H, W) =
/// lambda D(H; X) + ||X - W H||_F^2 over row-stochastic W.
FitReport fit_palm(const DataMatrix& x, const ArchetypeSet& h_init,
                   const SolverConfig& cfg);

/// Subsampled gradient descent with an Armijo backtracking line search on
/// the full risk.
FitReport fit_sgd(const DataMatrix& x, const ArchetypeSet& h_init,
                  const SolverConfig& cfg);

/// Alternating minimisation over weights and (archetype, anchor) pairs.
FitReport fit_altmin(const DataMatrix& x, const ArchetypeSet& h_init,
                     const SolverConfig& cfg);

/// Subsampled descent direction: rescaled data term over the rows in
/// `sample` plus the full regularization term.
Matrix sgd_direction(const DataMatrix& x, const HullProjector& data_hull,
                     const ArchetypeSet& h, double lambda,
                     const std::vector<Index>& sample,
                     Exec exec = Exec::parallel);

/// Psi(H, W) = lambda D(H; X) + ||X - W H||_F^2.
double palm_objective(const DataMatrix& x, const HullProjector& data_hull,
                      const ArchetypeSet& h, const WeightMatrix& w,
                      double lambda, Exec exec = Exec::parallel);

}  // namespace archetypal
