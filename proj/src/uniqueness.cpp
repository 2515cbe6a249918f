#include <algorithm>
#include <cmath>

#include "archetypal/geometry.hpp"
#include "archetypal/risk.hpp"
#include "archetypal/uniqueness.hpp"

namespace archetypal {
namespace {

void check_pair(const ArchetypeSet& h, const ArchetypeSet& h0,
                const DataMatrix& x0) {
  require_finite(h, "H");
  require_finite(h0, "H0");
  require_finite(x0, "X0");
  require_same_columns(h, x0, "H and X0");
  require_same_columns(h0, x0, "H0 and X0");
  if (h.rows() < 1 || h0.rows() < 1 || x0.rows() < 1) {
    throw InvalidInput("empty archetype or data matrix");
  }
}

}  // namespace

double uniqueness_ratio(const ArchetypeSet& h, const ArchetypeSet& h0,
                        const DataMatrix& x0) {
  check_pair(h, h0, x0);
  const double num = std::sqrt(dd_set_set(h, x0, Exec::serial).value) -
                     std::sqrt(dd_set_set(h0, x0, Exec::serial).value);
  const double den = std::sqrt(dd_set_set(h, h0, Exec::serial).value) +
                     std::sqrt(dd_set_set(h0, h, Exec::serial).value);
  return num / den;
}

bool hull_contains(const ArchetypeSet& h, const DataMatrix& x0, double rel_tol) {
  require_same_columns(h, x0, "H and X0");
  const HullProjector hull(h);
  const double scale = std::max({1.0, x0.rowwise().norm().maxCoeff(),
                                 h.rowwise().norm().maxCoeff()});
  const double tol = rel_tol * scale;
  for (Index i = 0; i < x0.rows(); ++i) {
    if (std::sqrt(hull.project(x0.row(i).transpose()).sq_distance) > tol) {
      return false;
    }
  }
  return true;
}

UniquenessCheck check_uniqueness_inequality(const ArchetypeSet& h,
                                            const ArchetypeSet& h0,
                                            const DataMatrix& x0, double alpha) {
  check_pair(h, h0, x0);
  if (!hull_contains(h, x0)) {
    throw InvalidInput("check_uniqueness_inequality: conv(X0) is not inside conv(H)");
  }
  const double lhs = std::sqrt(dd_set_set(h, x0, Exec::serial).value) -
                     std::sqrt(dd_set_set(h0, x0, Exec::serial).value);
  const double den = std::sqrt(dd_set_set(h, h0, Exec::serial).value) +
                     std::sqrt(dd_set_set(h0, h, Exec::serial).value);
  UniquenessCheck out;
  out.slack = lhs - alpha * den;
  out.holds = out.slack >= -1e-9;
  return out;
}

RobustnessConstants robustness_constants(double sigma_max, double kappa,
                                         double mu, double center_norm,
                                         Index r) {
  if (!(mu > 0.0)) throw InvalidInput("robustness constants need mu > 0");
  if (r < 1) throw InvalidInput("robustness constants need r >= 1");
  const double rr = static_cast<double>(r);
  const double sr = std::sqrt(rr);
  const double shape = std::max(1.0, kappa / sr);
  RobustnessConstants c;
  c.c_star = 120.0 * (sigma_max / mu) * shape;
  c.c_star_star =
      120.0 * std::max(kappa, (sigma_max / rr + center_norm) / (mu * sr)) * shape;
  return c;
}

RobustnessBound robustness_bound(const ArchetypeSet& h0, const DataMatrix& x0,
                                 double delta, double alpha) {
  require_same_columns(h0, x0, "H0 and X0");
  if (!(alpha > 0.0)) throw InvalidInput("robustness_bound: alpha must be > 0");
  if (!(delta >= 0.0)) throw InvalidInput("robustness_bound: delta must be >= 0");
  const Index r = h0.rows();
  const InternalRadiusResult rad = internal_radius(x0, r);
  if (!(rad.mu > 0.0)) {
    throw InvalidInput("robustness_bound: internal radius of conv(X0) is zero");
  }
  const SpectrumDiagnostics spec = spectrum(h0);
  const RobustnessConstants c = robustness_constants(
      spec.sigma_max, spec.kappa, rad.mu, rad.center.norm(), r);

  const double rr = static_cast<double>(r);
  RobustnessBound b;
  b.c_star = c.c_star;
  b.c_star_star = c.c_star_star;
  b.mu = rad.mu;
  b.sigma_max = spec.sigma_max;
  b.kappa = spec.kappa;
  b.noise_condition_ok = delta <= alpha * rad.mu / (30.0 * std::pow(rr, 1.5));
  b.noise_condition_secondary_ok =
      delta <= alpha * rad.mu / (330.0 * spec.kappa * std::pow(rr, 2.5));
  const double d2 = delta * delta / (alpha * alpha);
  b.bound_primary = c.c_star * c.c_star * std::pow(rr, 5) * d2;
  b.bound_secondary = c.c_star_star * c.c_star_star * std::pow(rr, 4) * d2;
  return b;
}

namespace {

Matrix base_triangle() {
  Matrix t(3, 2);
  t << 0.0, 0.0, 1.0, 0.0, 0.5, std::sqrt(3.0) / 2.0;
  return t;
}

void check_cut(double cut) {
  if (!(cut > 0.0 && cut <= 0.5)) {
    throw InvalidInput("hexagon_family: L must lie in (0, 1/2]");
  }
}

}  // namespace

ArchetypeSet hexagon_cut_triangle(double cut) {
  check_cut(cut);
  const Matrix t = base_triangle();
  // Each cut line is {barycentric coordinate of the cut corner = 1 - L}; two
  // such lines meet where the third coordinate is 2L - 1.
  ArchetypeSet h(3, 2);
  for (Index j = 0; j < 3; ++j) {
    const Index far = (j + 2) % 3;
    h.row(j) = (1.0 - cut) * (t.row(j) + t.row((j + 1) % 3)) +
               (2.0 * cut - 1.0) * t.row(far);
  }
  return h;
}

HexagonFamily hexagon_family(double cut) {
  check_cut(cut);
  const Matrix t = base_triangle();
  HexagonFamily f;
  f.x0.resize(6, 2);
  for (Index j = 0; j < 3; ++j) {
    const auto a = t.row(j);
    const auto b = t.row((j + 1) % 3);
    f.x0.row(2 * j) = a + cut * (b - a);
    f.x0.row(2 * j + 1) = b + cut * (a - b);
  }
  const double third = 1.0 / 3.0;
  f.non_unique = std::abs(cut - third) <= 1e-12;
  f.h0 = cut < third || f.non_unique ? t : hexagon_cut_triangle(cut);
  return f;
}

}  // namespace archetypal
