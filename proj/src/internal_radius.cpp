#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "archetypal/geometry.hpp"
#include "archetypal/lp.hpp"
#include "archetypal/uniqueness.hpp"

namespace archetypal {
namespace {

constexpr double kFacetTol = 1e-10;
constexpr double kMaxSubsets = 5e6;

double cross(const Vector& o, const Vector& a, const Vector& b) {
  return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
}

FacetDescription facets_1d(const Matrix& y) {
  FacetDescription f;
  f.normals.resize(2, 1);
  f.normals << 1.0, -1.0;
  f.offsets.resize(2);
  f.offsets << y.col(0).maxCoeff(), -y.col(0).minCoeff();
  return f;
}

// Andrew's monotone chain; returns counter-clockwise vertices without
// collinear points.
FacetDescription facets_2d(const Matrix& y, double scale) {
  std::vector<Vector> pts;
  for (Index i = 0; i < y.rows(); ++i) pts.emplace_back(y.row(i).transpose());
  std::sort(pts.begin(), pts.end(), [](const Vector& a, const Vector& b) {
    return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
  });
  const double tol = kFacetTol * scale * scale;
  std::vector<Vector> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t base = hull.size();
    for (const Vector& p : pts) {
      while (hull.size() >= base + 2 &&
             cross(hull[hull.size() - 2], hull.back(), p) <= tol) {
        hull.pop_back();
      }
      hull.push_back(p);
    }
    hull.pop_back();
    std::reverse(pts.begin(), pts.end());
  }
  FacetDescription f;
  const Index m = static_cast<Index>(hull.size());
  f.normals.resize(m, 2);
  f.offsets.resize(m);
  for (Index e = 0; e < m; ++e) {
    const Vector& p = hull[static_cast<std::size_t>(e)];
    const Vector& q = hull[static_cast<std::size_t>((e + 1) % m)];
    Vector normal(2);
    normal << q(1) - p(1), p(0) - q(0);
    normal.normalize();
    f.normals.row(e) = normal.transpose();
    f.offsets(e) = normal.dot(p);
  }
  return f;
}

bool next_combination(std::vector<Index>& idx, Index n) {
  const Index k = static_cast<Index>(idx.size());
  for (Index i = k - 1; i >= 0; --i) {
    if (idx[static_cast<std::size_t>(i)] < n - k + i) {
      ++idx[static_cast<std::size_t>(i)];
      for (Index j = i + 1; j < k; ++j) {
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
      }
      return true;
    }
  }
  return false;
}

// Brute-force facet enumeration over k-subsets of the extreme points.
FacetDescription facets_nd(const Matrix& y, double scale) {
  const Index n = y.rows();
  const Index k = y.cols();

  std::vector<Index> extreme;
  for (Index i = 0; i < n; ++i) {
    Matrix others(n - 1, k);
    others.topRows(i) = y.topRows(i);
    others.bottomRows(n - 1 - i) = y.bottomRows(n - 1 - i);
    if (n == 1) {
      extreme.push_back(i);
      continue;
    }
    const ProjectionResult p = project_convex_hull(y.row(i).transpose(), others);
    if (std::sqrt(p.sq_distance) > kFacetTol * scale) extreme.push_back(i);
  }
  const Index e = static_cast<Index>(extreme.size());
  double subsets = 1.0;
  for (Index i = 0; i < k; ++i) {
    subsets *= static_cast<double>(e - i) / static_cast<double>(i + 1);
  }
  if (subsets > kMaxSubsets) {
    throw InvalidInput("hull_facets: too many extreme points (" +
                       std::to_string(e) + ") for facet enumeration in " +
                       std::to_string(k) + " dimensions");
  }
  Matrix ext(e, k);
  for (Index i = 0; i < e; ++i) ext.row(i) = y.row(extreme[static_cast<std::size_t>(i)]);

  std::vector<Vector> normals;
  std::vector<double> offsets;
  std::vector<Index> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), Index{0});
  do {
    Matrix diff(k - 1, k);
    for (Index j = 1; j < k; ++j) {
      diff.row(j - 1) = ext.row(idx[static_cast<std::size_t>(j)]) - ext.row(idx[0]);
    }
    Eigen::JacobiSVD<Matrix> svd(diff, Eigen::ComputeFullV);
    const Vector s = svd.singularValues();
    if (s(k - 2) <= kFacetTol * scale) continue;
    Vector normal = svd.matrixV().col(k - 1);
    double offset = normal.dot(ext.row(idx[0]).transpose());
    const Vector side = ext * normal - Vector::Constant(e, offset);
    const double tol = kFacetTol * scale;
    if ((side.array() <= tol).all()) {
      // already outward
    } else if ((side.array() >= -tol).all()) {
      normal = -normal;
      offset = -offset;
    } else {
      continue;
    }
    bool seen = false;
    for (std::size_t f = 0; f < normals.size() && !seen; ++f) {
      seen = (normals[f] - normal).norm() <= 1e-8 &&
             std::abs(offsets[f] - offset) <= 1e-8 * scale;
    }
    if (!seen) {
      normals.push_back(normal);
      offsets.push_back(offset);
    }
  } while (next_combination(idx, e));

  FacetDescription f;
  f.normals.resize(static_cast<Index>(normals.size()), k);
  f.offsets.resize(static_cast<Index>(normals.size()));
  for (std::size_t i = 0; i < normals.size(); ++i) {
    f.normals.row(static_cast<Index>(i)) = normals[i].transpose();
    f.offsets(static_cast<Index>(i)) = offsets[i];
  }
  return f;
}

}  // namespace

FacetDescription hull_facets(const Matrix& y) {
  if (y.rows() < 1 || y.cols() < 1) throw InvalidInput("hull_facets: empty input");
  const double scale = std::max(
      (y.rowwise() - y.colwise().mean()).rowwise().norm().maxCoeff(), 1e-300);
  switch (y.cols()) {
    case 1: return facets_1d(y);
    case 2: return facets_2d(y, scale);
    default: return facets_nd(y, scale);
  }
}

InternalRadiusResult internal_radius(const DataMatrix& x0, Index r) {
  if (r < 2) throw InvalidInput("internal_radius: r must be >= 2");
  if (x0.rows() < 1) throw InvalidInput("internal_radius: empty data");
  require_finite(x0, "X0");

  InternalRadiusResult out;
  const Vector mean = x0.colwise().mean().transpose();
  const Matrix centered = x0.rowwise() - mean.transpose();
  Eigen::JacobiSVD<Matrix> svd(centered, Eigen::ComputeThinV);
  const Vector s = svd.singularValues();
  Index k = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > 1e-10 * s(0)) ++k;
  }
  out.affine_dim = k;
  out.center = mean;
  const Matrix& v = svd.matrixV();
  const Index keep = std::min<Index>(r - 1, v.cols());
  out.basis = v.leftCols(keep);
  if (k < r - 1) {
    out.degenerate = true;
    return out;
  }
  out.lower_bound = k > r - 1;

  const Matrix vk = v.leftCols(k);
  const Matrix y = centered * vk;  // affine coordinates, centroid at 0
  const FacetDescription f = hull_facets(y);
  out.facets = static_cast<std::size_t>(f.offsets.size());

  // Chebyshev centre: maximise mu subject to a_j . z + mu <= b_j with the
  // free z split as z+ - z-. The origin (data centroid) is interior, so the
  // right-hand side is positive.
  const Index m = f.offsets.size();
  Matrix a(m, 2 * k + 1);
  a.leftCols(k) = f.normals;
  a.middleCols(k, k) = -f.normals;
  a.col(2 * k).setOnes();
  Vector c = Vector::Zero(2 * k + 1);
  c(2 * k) = 1.0;
  const LpResult lp = solve_lp_max(a, f.offsets.cwiseMax(0.0), c);
  if (lp.status != LpStatus::optimal) {
    throw Error("internal_radius: Chebyshev-centre LP did not reach an optimum");
  }
  const Vector z = lp.solution.head(k) - lp.solution.segment(k, k);
  out.mu = lp.solution(2 * k);
  out.center = mean + vk * z;
  return out;
}

}  // namespace archetypal
