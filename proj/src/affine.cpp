#include <cmath>

#include "archetypal/geometry.hpp"

namespace archetypal {

AffineHull::AffineHull(const Matrix& anchors, double rank_tol) {
  if (anchors.rows() < 1 || anchors.cols() < 1) {
    throw InvalidInput("AffineHull: empty anchor set");
  }
  require_finite(anchors, "anchors");
  origin_ = anchors.row(0).transpose();
  const Index k = anchors.rows();
  const Index d = anchors.cols();
  if (k == 1) {
    basis_.resize(d, 0);
    return;
  }
  Matrix diff = (anchors.bottomRows(k - 1).rowwise() -
                 anchors.row(0)).transpose();  // d x (k-1)
  Eigen::ColPivHouseholderQR<Matrix> qr(diff);
  qr.setThreshold(rank_tol);
  rank_ = qr.rank();
  degenerate_ = rank_ < k - 1;
  const Matrix q = qr.householderQ() * Matrix::Identity(d, rank_);
  basis_ = q;
}

double AffineHull::distance(const Eigen::Ref<const Vector>& u) const {
  if (u.size() != origin_.size()) {
    throw InvalidInput("AffineHull: dimension mismatch");
  }
  Vector w = u - origin_;
  if (rank_ > 0) {
    // Two passes of projection removal keep the residual accurate when it is
    // small relative to |u - origin|.
    w -= basis_ * (basis_.transpose() * w);
    w -= basis_ * (basis_.transpose() * w);
  }
  return w.norm();
}

AffineDistance distance_to_affine(const Eigen::Ref<const Vector>& u,
                                  const Matrix& anchors) {
  const AffineHull hull(anchors);
  return {hull.distance(u), hull.degenerate()};
}

bool affinely_independent(const Matrix& m, double rel_tol) {
  const Index k = m.rows();
  if (k <= 1) return true;
  if (k - 1 > m.cols()) return false;
  const Matrix diff = m.bottomRows(k - 1).rowwise() - m.row(0);
  Eigen::JacobiSVD<Matrix> svd(diff);
  const Vector s = svd.singularValues();
  if (s(0) == 0.0) return false;
  return s(s.size() - 1) > rel_tol * s(0);
}

}  // namespace archetypal
