#pragma once

#include <cstdint>
#include <vector>

#include "archetypal/types.hpp"

namespace archetypal {

struct InternalRadiusResult {
  double mu = 0.0;
  Vector center;  // z0
  Matrix basis;   // d x (r-1), orthonormal columns
  Index affine_dim = 0;
  // conv(X0) spans fewer than r-1 dimensions: mu is 0.
  bool degenerate = false;
  // conv(X0) spans more than r-1 dimensions: mu is the radius of the
  // largest full-dimensional inscribed ball, a lower bound for the largest
  // inscribed (r-1)-ball.
  bool lower_bound = false;
  std::size_t facets = 0;
};

/// Largest (r-1)-dimensional ball inside conv(X0): Chebyshev centre of the
/// hull's facet description in affine coordinates.
InternalRadiusResult internal_radius(const DataMatrix& x0, Index r);

/// Facets of the convex hull of the rows of `y` (full-dimensional, k >= 1
/// columns), as rows of `normals` (unit, outward) and `offsets`:
/// normals * p <= offsets for points p of the hull.
struct FacetDescription {
  Matrix normals;
  Vector offsets;
};

FacetDescription hull_facets(const Matrix& y);

struct AlphaSearchConfig {
  std::size_t restarts = 200;
  std::size_t evals_per_restart = 600;
  std::uint64_t seed = 0;
  double jitter = 0.15;       // start perturbation, relative to the H0 radius
  double min_denominator = 1e-6;  // relative; excludes H ~ H0
  bool record_visits = false;
  Exec exec = Exec::parallel;
};

struct VisitedCandidate {
  ArchetypeSet h;
  double ratio = 0.0;
};

struct AlphaEstimate {
  double alpha_hat = 1.0;
  double raw_min = 1.0;  // before clamping to [0, 1]
  ArchetypeSet witness_h;
  std::size_t search_evals = 0;
  std::size_t feasible_evals = 0;
  std::vector<VisitedCandidate> visited;  // only with record_visits
};

/// Upper estimate of the uniqueness constant: the smallest ratio
///   (D(H,X0)^1/2 - D(H0,X0)^1/2) / (D(H,H0)^1/2 + D(H0,H)^1/2)
/// over candidate H whose hull contains conv(X0), found by multi-start
/// Nelder-Mead over the vertex coordinates. Candidates are made feasible by
/// expanding them radially about the centroid of X0.
AlphaEstimate estimate_alpha(const DataMatrix& x0, const ArchetypeSet& h0,
                             const AlphaSearchConfig& search = {});

/// The ratio above for one candidate (no containment check).
double uniqueness_ratio(const ArchetypeSet& h, const ArchetypeSet& h0,
                        const DataMatrix& x0);

struct UniquenessCheck {
  bool holds = false;
  double slack = 0.0;
};

/// Evaluates D(H,X0)^1/2 - D(H0,X0)^1/2 - alpha (D(H,H0)^1/2 + D(H0,H)^1/2).
/// Throws InvalidInput when conv(X0) is not inside conv(H).
UniquenessCheck check_uniqueness_inequality(const ArchetypeSet& h,
                                            const ArchetypeSet& h0,
                                            const DataMatrix& x0, double alpha);

/// True if every row of x0 lies in conv(h) up to `rel_tol` times the scale
/// of the data.
bool hull_contains(const ArchetypeSet& h, const DataMatrix& x0,
                   double rel_tol = 1e-8);

struct RobustnessConstants {
  double c_star = 0.0;
  double c_star_star = 0.0;
};

RobustnessConstants robustness_constants(double sigma_max, double kappa,
                                         double mu, double center_norm,
                                         Index r);

struct RobustnessBound {
  double c_star = 0.0;
  double c_star_star = 0.0;
  bool noise_condition_ok = false;            // delta <= alpha mu / (30 r^1.5)
  bool noise_condition_secondary_ok = false;  // delta <= alpha mu / (330 kappa r^2.5)
  double bound_primary = 0.0;    // c_star^2 r^5 delta^2 / alpha^2
  double bound_secondary = 0.0;  // c_star_star^2 r^4 delta^2 / alpha^2
  double mu = 0.0;
  double sigma_max = 0.0;
  double kappa = 0.0;
};

RobustnessBound robustness_bound(const ArchetypeSet& h0, const DataMatrix& x0,
                                 double delta, double alpha);

struct HexagonFamily {
  DataMatrix x0;     // 6 x 2 hexagon vertices in boundary order
  ArchetypeSet h0;   // 3 x 2
  bool non_unique = false;  // L == 1/3: both triangles are optimal
};

/// Truncates each corner of the unit-side equilateral triangle with
/// vertices (0,0), (1,0), (1/2, sqrt(3)/2) at fraction L along both
/// incident edges. The archetypes are the uncut triangle for L < 1/3 and
/// the triangle bounded by the three cuts for L > 1/3.
HexagonFamily hexagon_family(double cut);

/// The triangle bounded by the three cut lines (pointing down).
ArchetypeSet hexagon_cut_triangle(double cut);

}  // namespace archetypal
