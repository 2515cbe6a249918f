#include <doctest.h>

#include "archetypal/geometry.hpp"
#include "oracles.hpp"

using namespace archetypal;

namespace {
Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}
}  // namespace

TEST_CASE("project_simplex examples") {
  CHECK((project_simplex(vec({0.5, 0.5})) - vec({0.5, 0.5})).norm() < 1e-15);
  CHECK((project_simplex(vec({2.0, 0.0})) - vec({1.0, 0.0})).norm() < 1e-15);
  const Vector p = project_simplex(vec({0.2, 0.4, 0.9}));
  CHECK(p(0) == doctest::Approx(0.1 / 3).epsilon(1e-12));
  CHECK(p(1) == doctest::Approx(0.7 / 3).epsilon(1e-12));
  CHECK(p(2) == doctest::Approx(2.2 / 3).epsilon(1e-12));
}

TEST_CASE("project_simplex agrees with a grid over the simplex") {
  // Projection onto the simplex is the closest point: brute force at 1e-3.
  const Vector v = vec({0.2, 0.4, 0.9});
  double best = 1e300;
  Vector arg(3);
  for (int i = 0; i <= 1000; ++i) {
    for (int j = 0; i + j <= 1000; ++j) {
      const Vector w = vec({i / 1000.0, j / 1000.0, (1000 - i - j) / 1000.0});
      const double d = (w - v).squaredNorm();
      if (d < best) {
        best = d;
        arg = w;
      }
    }
  }
  CHECK((project_simplex(v) - arg).cwiseAbs().maxCoeff() < 1.5e-3);
}

TEST_CASE("project_simplex is idempotent and non-expansive") {
  CounterRng rng(11);
  for (int t = 0; t < 200; ++t) {
    const Index m = oracle::uniform_int(rng, 1, 8);
    const Vector a = oracle::gaussian(rng, m, 1, 2.0);
    const Vector b = oracle::gaussian(rng, m, 1, 2.0);
    const Vector pa = project_simplex(a);
    CHECK((project_simplex(pa) - pa).norm() < 1e-12);
    CHECK((pa - project_simplex(b)).norm() <= (a - b).norm() + 1e-12);
    CHECK(pa.minCoeff() >= 0.0);
    CHECK(std::abs(pa.sum() - 1.0) < 1e-10);
  }
}

TEST_CASE("project_simplex rejects non-finite input") {
  CHECK_THROWS_AS(project_simplex(vec({1.0, NAN})), InvalidInput);
  CHECK_THROWS_AS(project_simplex(Vector()), InvalidInput);
}

TEST_CASE("project_convex_hull examples") {
  Matrix seg(2, 2);
  seg << 0, 0, 1, 0;
  const ProjectionResult r1 = project_convex_hull(vec({2, 1}), seg);
  CHECK(r1.converged);
  CHECK((r1.point - vec({1, 0})).norm() < 1e-12);
  CHECK(r1.sq_distance == doctest::Approx(2.0));

  Matrix tri(3, 2);
  tri << 0, 0, 1, 0, 0, 1;
  const ProjectionResult r2 = project_convex_hull(vec({1, 1}), tri);
  CHECK((r2.point - vec({0.5, 0.5})).norm() < 1e-12);
  CHECK(r2.sq_distance == doctest::Approx(0.5));
  CHECK(r2.sq_distance == doctest::Approx(oracle::grid_hull_sq_distance(vec({1, 1}), tri)));

  CHECK(project_convex_hull(tri.row(1).transpose(), tri).sq_distance < 1e-24);
}

TEST_CASE("active set and accelerated gradient agree") {
  CounterRng rng(12);
  HullOptions apg;
  apg.algorithm = HullAlgorithm::accelerated_gradient;
  apg.tol = 1e-14;
  apg.max_iter = 200000;
  for (int t = 0; t < 100; ++t) {
    const Index m = oracle::uniform_int(rng, 1, 16);
    const Index d = oracle::uniform_int(rng, 1, 6);
    const Matrix v = oracle::gaussian(rng, m, d);
    const Vector u = oracle::gaussian(rng, d, 1, 1.5);
    const ProjectionResult a = project_convex_hull(u, v);
    const ProjectionResult b = project_convex_hull(u, v, apg);
    CHECK(a.converged);
    CHECK(a.sq_distance == doctest::Approx(b.sq_distance).epsilon(1e-6).scale(1.0));
    CHECK((a.point - v.transpose() * a.weights).norm() < 1e-9 * (1 + a.point.norm()));
    CHECK(std::abs(a.weights.sum() - 1.0) < 1e-10);
    CHECK(a.weights.minCoeff() >= -1e-12);
    for (Index i = 0; i < m; ++i) {
      CHECK(a.sq_distance <= (u - v.row(i).transpose()).squaredNorm() + 1e-12);
    }
  }
}

TEST_CASE("duplicate vertices are allowed") {
  Matrix v(4, 2);
  v << 0, 0, 1, 0, 1, 0, 0, 1;
  const ProjectionResult r = project_convex_hull(vec({1, 1}), v);
  CHECK(r.sq_distance == doctest::Approx(0.5));
}

TEST_CASE("project_rows serial and parallel are bitwise equal") {
  CounterRng rng(13);
  const Matrix v = oracle::gaussian(rng, 7, 5);
  const Matrix u = oracle::gaussian(rng, 300, 5, 2.0);
  const HullProjector hull(v);
  const BatchProjection s = project_rows(u, hull, Exec::serial);
  const BatchProjection p = project_rows(u, hull, Exec::parallel);
  CHECK(s.points == p.points);
  CHECK(s.weights == p.weights);
  CHECK(s.sq_distances == p.sq_distances);
}

TEST_CASE("distance_to_affine examples") {
  Matrix p(2, 2);
  p << 0, 0, 1, 0;
  CHECK(distance_to_affine(vec({0.5, 2}), p).distance == doctest::Approx(2.0));
  CHECK(distance_to_affine(vec({7, 0}), p).distance < 1e-14);
  Matrix q(2, 3);
  q << 0, 0, 0, 1, 1, 0;
  CHECK(distance_to_affine(vec({1, 0, 0}), q).distance == doctest::Approx(std::sqrt(0.5)));

  Matrix dep(3, 2);
  dep << 0, 0, 1, 0, 2, 0;
  const AffineDistance ad = distance_to_affine(vec({0.5, 2}), dep);
  CHECK(ad.degenerate);
  CHECK(ad.distance == doctest::Approx(2.0));
}

TEST_CASE("affine distance never exceeds hull distance") {
  CounterRng rng(14);
  for (int t = 0; t < 100; ++t) {
    const Index d = oracle::uniform_int(rng, 2, 6);
    const Index k = oracle::uniform_int(rng, 1, d);
    const Matrix p = oracle::gaussian(rng, k, d);
    const Vector u = oracle::gaussian(rng, d, 1, 2.0);
    CHECK(distance_to_affine(u, p).distance <=
          std::sqrt(project_convex_hull(u, p).sq_distance) + 1e-12);
  }
}

TEST_CASE("affinely_independent") {
  Matrix a(3, 2);
  a << 0, 0, 1, 0, 0, 1;
  CHECK(affinely_independent(a));
  a.row(2) << 2, 0;
  CHECK_FALSE(affinely_independent(a));
}
