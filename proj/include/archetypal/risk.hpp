#pragma once

#include <limits>

#include "archetypal/geometry.hpp"

namespace archetypal {

/// Sum over the rows of U of the squared distance to conv(V).
struct SetDistance {
  double value = 0.0;
  bool converged = true;  // false if any row projection hit its cap
};

SetDistance dd_set_set(const Matrix& u, const Matrix& v,
                       Exec exec = Exec::parallel,
                       const HullOptions& opts = {});

/// Same as dd_set_set but reusing a prepared hull.
SetDistance dd_set_set(const Matrix& u, const HullProjector& hull,
                       Exec exec = Exec::parallel);

struct RiskValue {
  double fit_term = 0.0;  // D(X; H)
  double reg_term = 0.0;  // D(H; X)
  double total = 0.0;     // fit + lambda * reg
  double lambda = 0.0;
  bool converged = true;
};

/// Regularized archetypal risk. `lambda` may be +infinity, in which case the
/// total is the fit term when H lies in conv(X) and +infinity otherwise.
RiskValue risk_lagrangian(const DataMatrix& x, const ArchetypeSet& h,
                          double lambda, Exec exec = Exec::parallel);

struct RiskGradient {
  Matrix value;  // r x d
  bool converged = true;
};

/// Closed-form gradient of the regularized risk. Requires affinely
/// independent archetypes (DegeneracyError otherwise).
RiskGradient risk_gradient(const DataMatrix& x, const ArchetypeSet& h,
                           double lambda, Exec exec = Exec::parallel);

/// Risk and gradient from one set of projections. `data_hull` must wrap X.
struct RiskEvaluation {
  RiskValue risk;
  Matrix gradient;     // empty when H is affinely dependent
  WeightMatrix weights;  // optimal weights of X on conv(H)
  Matrix hull_of_h;    // projections of the rows of H onto conv(X)
  bool gradient_valid = false;
};

RiskEvaluation evaluate_risk(const DataMatrix& x, const HullProjector& data_hull,
                             const ArchetypeSet& h, double lambda,
                             Exec exec = Exec::parallel);

/// Sum over true archetypes of the squared distance to the nearest estimate.
double loss_L(const ArchetypeSet& h0, const ArchetypeSet& hhat);

/// Nearest-estimate squared distance for each row of h0.
Vector nearest_sq_distances(const ArchetypeSet& h0, const ArchetypeSet& hhat);

struct SpectrumDiagnostics {
  double sigma_max = 0.0;
  double sigma_min = 0.0;  // smallest singular value above 1e-12 * sigma_max
  double kappa = 1.0;
};

SpectrumDiagnostics spectrum(const Matrix& h);

}  // namespace archetypal
