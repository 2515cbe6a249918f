#include <cmath>
#include <limits>

#include "archetypal/risk.hpp"

namespace archetypal {
namespace {

double in_hull_tolerance(const Matrix& x) {
  return 1e-12 * (1.0 + x.rowwise().squaredNorm().maxCoeff());
}

double combine(double fit, double reg, double lambda, double tol) {
  if (std::isinf(lambda)) {
    return reg <= tol ? fit : std::numeric_limits<double>::infinity();
  }
  return fit + lambda * reg;
}

void check_lambda(double lambda) {
  if (std::isnan(lambda) || lambda < 0.0) {
    throw InvalidInput("lambda must be non-negative");
  }
}

}  // namespace

SetDistance dd_set_set(const Matrix& u, const HullProjector& hull, Exec exec) {
  const BatchProjection b = project_rows(u, hull, exec);
  SetDistance out;
  // Fixed row order keeps the sum independent of the thread count.
  for (Index i = 0; i < b.sq_distances.size(); ++i) {
    out.value += b.sq_distances(i);
  }
  out.converged = b.all_converged;
  return out;
}

SetDistance dd_set_set(const Matrix& u, const Matrix& v, Exec exec,
                       const HullOptions& opts) {
  require_same_columns(u, v, "dd_set_set");
  require_finite(u, "U");
  return dd_set_set(u, HullProjector(v, opts), exec);
}

RiskEvaluation evaluate_risk(const DataMatrix& x, const HullProjector& data_hull,
                             const ArchetypeSet& h, double lambda, Exec exec) {
  check_lambda(lambda);
  require_same_columns(x, h, "evaluate_risk");
  require_finite(h, "H");

  RiskEvaluation ev;
  const HullProjector arch_hull(h);
  const BatchProjection data_on_h = project_rows(x, arch_hull, exec);
  const BatchProjection h_on_data = project_rows(h, data_hull, exec);

  double fit = 0.0;
  for (Index i = 0; i < data_on_h.sq_distances.size(); ++i) {
    fit += data_on_h.sq_distances(i);
  }
  double reg = 0.0;
  for (Index l = 0; l < h_on_data.sq_distances.size(); ++l) {
    reg += h_on_data.sq_distances(l);
  }

  ev.risk.fit_term = fit;
  ev.risk.reg_term = reg;
  ev.risk.lambda = lambda;
  ev.risk.total = combine(fit, reg, lambda, in_hull_tolerance(x));
  ev.risk.converged = data_on_h.all_converged && h_on_data.all_converged;
  ev.weights = data_on_h.weights;
  ev.hull_of_h = h_on_data.points;

  if (!std::isinf(lambda) && affinely_independent(h)) {
    ev.gradient = 2.0 * data_on_h.weights.transpose() * (data_on_h.points - x) +
                  2.0 * lambda * (h - h_on_data.points);
    ev.gradient_valid = true;
  }
  return ev;
}

RiskValue risk_lagrangian(const DataMatrix& x, const ArchetypeSet& h,
                          double lambda, Exec exec) {
  require_same_columns(x, h, "risk_lagrangian");
  require_finite(x, "X");
  return evaluate_risk(x, HullProjector(x), h, lambda, exec).risk;
}

RiskGradient risk_gradient(const DataMatrix& x, const ArchetypeSet& h,
                           double lambda, Exec exec) {
  require_same_columns(x, h, "risk_gradient");
  require_finite(x, "X");
  if (std::isinf(lambda)) {
    throw InvalidInput("risk_gradient: lambda must be finite");
  }
  if (!affinely_independent(h)) {
    throw DegeneracyError(
        "risk_gradient: archetypes are affinely dependent");
  }
  const RiskEvaluation ev = evaluate_risk(x, HullProjector(x), h, lambda, exec);
  return {ev.gradient, ev.risk.converged};
}

Vector nearest_sq_distances(const ArchetypeSet& h0, const ArchetypeSet& hhat) {
  require_same_columns(h0, hhat, "loss_L");
  if (hhat.rows() < 1) throw InvalidInput("loss_L: empty estimate");
  Vector out(h0.rows());
  for (Index l = 0; l < h0.rows(); ++l) {
    out(l) = (hhat.rowwise() - h0.row(l)).rowwise().squaredNorm().minCoeff();
  }
  return out;
}

double loss_L(const ArchetypeSet& h0, const ArchetypeSet& hhat) {
  return nearest_sq_distances(h0, hhat).sum();
}

SpectrumDiagnostics spectrum(const Matrix& h) {
  require_finite(h, "H");
  if (h.size() == 0 || h.isZero(0.0)) {
    throw InvalidInput("spectrum: all-zero matrix");
  }
  Eigen::JacobiSVD<Matrix> svd(h);
  const Vector s = svd.singularValues();
  SpectrumDiagnostics out;
  out.sigma_max = s(0);
  out.sigma_min = s(0);
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > 1e-12 * s(0)) out.sigma_min = s(i);
  }
  out.kappa = out.sigma_max / out.sigma_min;
  return out;
}

}  // namespace archetypal
