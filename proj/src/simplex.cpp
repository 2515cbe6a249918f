#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "archetypal/geometry.hpp"

namespace archetypal {

void require_finite(const Matrix& m, const char* name) {
  if (!m.allFinite()) {
    throw InvalidInput(std::string(name) + " contains non-finite entries");
  }
}

void require_same_columns(const Matrix& a, const Matrix& b, const char* what) {
  if (a.cols() != b.cols()) {
    throw InvalidInput(std::string(what) + ": column counts differ (" +
                       std::to_string(a.cols()) + " vs " +
                       std::to_string(b.cols()) + ")");
  }
}

Vector project_simplex(const Eigen::Ref<const Vector>& v) {
  const Index m = v.size();
  if (m == 0) throw InvalidInput("project_simplex: empty vector");
  if (!v.allFinite()) throw InvalidInput("project_simplex: non-finite input");

  std::vector<double> sorted(v.data(), v.data() + m);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  // Largest k with sorted[k-1] - (cumsum_k - 1)/k > 0 fixes the threshold.
  double cumsum = 0.0;
  double theta = 0.0;
  for (Index k = 0; k < m; ++k) {
    cumsum += sorted[k];
    const double t = (cumsum - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - t > 0.0) theta = t;
  }

  Vector out = (v.array() - theta).max(0.0).matrix();
  // The threshold is exact in real arithmetic; renormalise the rounding.
  const double s = out.sum();
  if (s > 0.0) out /= s;
  return out;
}

void project_rows_simplex(Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    m.row(i) = project_simplex(m.row(i).transpose()).transpose();
  }
}

}  // namespace archetypal
