#pragma once

#include <chrono>
#include <optional>

#include "archetypal/solvers.hpp"

namespace archetypal::detail {

// Stopping rules shared by the three solvers: relative risk change below
// rel_tol for `patience` consecutive iterations, gradient norm below
// grad_tol, or the iteration cap.
class StopMonitor {
 public:
  StopMonitor(const SolverConfig& cfg, const DataMatrix& x);

  std::optional<StopReason> update(double previous, double current,
                                   double grad_norm);

 private:
  const SolverConfig& cfg_;
  double floor_;
  std::size_t quiet_ = 0;
};

class WallTimer {
 public:
  WallTimer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void check_solver_inputs(const DataMatrix& x, const ArchetypeSet& h_init,
                         const SolverConfig& cfg, bool allow_infinite_lambda);

void require_finite_iterate(const Matrix& m, std::size_t iteration,
                            const char* what);

}  // namespace archetypal::detail
