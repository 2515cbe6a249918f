#include <cmath>
#include <vector>

#include "archetypal/geometry.hpp"
#include "archetypal/init.hpp"

namespace archetypal {
namespace {

void fix_sign(Eigen::Ref<Vector> v) {
  Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v(arg) < 0.0) v = -v;
}

// Deterministic arg max: strict comparison, so the lowest index wins ties.
Index arg_max(const Vector& values) {
  Index best = 0;
  for (Index i = 1; i < values.size(); ++i) {
    if (values(i) > values(best)) best = i;
  }
  return best;
}

}  // namespace

InitResult spectral_init(const DataMatrix& x, Index r) {
  require_finite(x, "X");
  const Index n = x.rows();
  const Index d = x.cols();
  if (r < 1 || r > std::min(n, d)) {
    throw InvalidInput("spectral_init: need 1 <= r <= min(n, d)");
  }
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeFullV);
  const Vector s = svd.singularValues();
  const Matrix& v = svd.matrixV();

  InitResult out;
  out.method = InitMethod::spectral;
  out.archetypes.resize(r, d);
  const double cutoff = 1e-12 * std::max(s(0), 1e-300);
  for (Index l = 0; l < r; ++l) {
    Vector col = v.col(l);
    fix_sign(col);
    out.archetypes.row(l) = col.transpose();
    if (!(s(l) > cutoff)) out.rank_deficient = true;
  }
  return out;
}

InitResult successive_projections_init(const DataMatrix& x, Index r,
                                       Exec exec) {
  require_finite(x, "X");
  const Index n = x.rows();
  if (r < 1 || r > n) {
    throw InvalidInput("successive_projections_init: need 1 <= r <= n");
  }

  std::vector<Index> chosen;
  chosen.push_back(arg_max(x.rowwise().squaredNorm()));

  Vector dist(n);
  const double scale = std::sqrt(x.rowwise().squaredNorm().maxCoeff());
  while (static_cast<Index>(chosen.size()) < r) {
    Matrix anchors(static_cast<Index>(chosen.size()), x.cols());
    for (std::size_t s = 0; s < chosen.size(); ++s) {
      anchors.row(static_cast<Index>(s)) = x.row(chosen[s]);
    }
    const AffineHull hull(anchors);
    if (exec == Exec::serial) {
      for (Index i = 0; i < n; ++i) dist(i) = hull.distance(x.row(i).transpose());
    } else {
#pragma omp parallel for schedule(static)
      for (Index i = 0; i < n; ++i) dist(i) = hull.distance(x.row(i).transpose());
    }
    const Index next = arg_max(dist);
    if (!(dist(next) > 1e-12 * std::max(scale, 1e-300))) {
      throw DegeneracyError(
          "successive_projections_init: only " +
              std::to_string(chosen.size()) +
              " affinely independent rows found, " + std::to_string(r) +
              " requested",
          static_cast<Index>(chosen.size()));
    }
    chosen.push_back(next);
  }

  InitResult out;
  out.method = InitMethod::successive_projections;
  out.archetypes.resize(r, x.cols());
  for (Index l = 0; l < r; ++l) out.archetypes.row(l) = x.row(chosen[l]);
  out.selected_indices = chosen;
  return out;
}

}  // namespace archetypal
