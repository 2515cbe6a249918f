#include <doctest.h>

#include <algorithm>

#include "archetypal/init.hpp"
#include "archetypal/risk.hpp"
#include "archetypal/synth.hpp"
#include "oracles.hpp"

using namespace archetypal;

TEST_CASE("spectral_init rank one") {
  Vector v(3);
  v << 1, -2, -3;
  Matrix x(4, 3);
  for (Index i = 0; i < 4; ++i) x.row(i) = (i + 1.0) * v.transpose();
  const InitResult r = spectral_init(x, 1);
  // Largest-magnitude entry made positive.
  CHECK((r.archetypes.row(0).transpose() + v.normalized()).norm() < 1e-12);
}

TEST_CASE("spectral_init sign convention and orthonormality") {
  CounterRng rng(31);
  const Matrix x = oracle::gaussian(rng, 30, 6);
  const InitResult r = spectral_init(x, 4);
  const Matrix g = r.archetypes * r.archetypes.transpose();
  CHECK((g - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
  for (Index l = 0; l < 4; ++l) {
    Index arg = 0;
    r.archetypes.row(l).cwiseAbs().maxCoeff(&arg);
    CHECK(r.archetypes(l, arg) > 0.0);
  }
  CHECK(r.method == InitMethod::spectral);
  CHECK_FALSE(r.rank_deficient);

  const InitResult id = spectral_init(Matrix::Identity(3, 3), 3);
  CHECK((id.archetypes * id.archetypes.transpose() - Matrix::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("spectral_init recovers the row space of a low-rank matrix") {
  CounterRng rng(32);
  const Matrix w = oracle::gaussian(rng, 40, 3);
  const Matrix h = oracle::gaussian(rng, 3, 8);
  const Matrix x = w * h;
  const InitResult r = spectral_init(x, 3);
  // Principal angles via the SVD of the cross-Gram of orthonormal bases.
  Eigen::HouseholderQR<Matrix> qr(h.transpose());
  const Matrix qh = qr.householderQ() * Matrix::Identity(8, 3);
  Eigen::JacobiSVD<Matrix> svd(qh.transpose() * r.archetypes.transpose());
  CHECK(svd.singularValues().minCoeff() > 1.0 - 1e-12);
}

TEST_CASE("spectral_init flags rank deficiency") {
  Matrix x(3, 3);
  x << 1, 0, 0, 2, 0, 0, 0, 1, 0;
  CHECK(spectral_init(x, 3).rank_deficient);
}

TEST_CASE("successive_projections_init examples") {
  Matrix one(1, 2);
  one << 3, 4;
  const InitResult a = successive_projections_init(one, 1);
  CHECK(a.archetypes == one);

  Matrix x(3, 2);
  x << 2, 0, 0, 1, 1, 0.5;
  const InitResult b = successive_projections_init(x, 2);
  REQUIRE(b.selected_indices.has_value());
  CHECK(*b.selected_indices == std::vector<Index>{0, 1});
}

TEST_CASE("successive_projections_init returns the triangle vertices") {
  Matrix tri(3, 2);
  tri << 0, 0, 1, 0, 0.5, 0.9;
  CounterRng rng(33);
  Matrix x(53, 2);
  x.topRows(3) = tri;
  for (Index i = 3; i < 53; ++i) {
    x.row(i) = rng.dirichlet(Vector::Constant(3, 2.0)).transpose() * tri;
  }
  const InitResult r = successive_projections_init(x, 3);
  std::vector<Index> idx = *r.selected_indices;
  std::sort(idx.begin(), idx.end());
  CHECK(idx == std::vector<Index>{0, 1, 2});
  CHECK(loss_L(tri, r.archetypes) == 0.0);
}

TEST_CASE("successive_projections_init degeneracy") {
  Matrix x(4, 2);
  x << 0, 0, 1, 0, 2, 0, 3, 0;
  try {
    successive_projections_init(x, 3);
    FAIL("expected DegeneracyError");
  } catch (const DegeneracyError& e) {
    CHECK(e.found() == 2);
  }
}

TEST_CASE("successive_projections_init permutation equivariance and exec paths") {
  const NoisyDataset ds = gen_separable(60, 4, 5, 34);
  const InitResult a = successive_projections_init(ds.x, 4, Exec::serial);
  const InitResult b = successive_projections_init(ds.x, 4, Exec::parallel);
  CHECK(a.archetypes == b.archetypes);
  CHECK(loss_L(ds.h0, a.archetypes) == 0.0);

  Matrix reversed = ds.x.colwise().reverse();
  const InitResult c = successive_projections_init(reversed, 4);
  CHECK(loss_L(a.archetypes, c.archetypes) == 0.0);
  for (std::size_t l = 0; l < 4; ++l) {
    CHECK(reversed.row((*c.selected_indices)[l]) == c.archetypes.row(static_cast<Index>(l)));
  }
}
