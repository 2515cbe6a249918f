#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "archetypal/csv.hpp"
#include "archetypal/geometry.hpp"
#include "archetypal/rng.hpp"
#include "archetypal/synth.hpp"
#include "oracles.hpp"

using namespace archetypal;

TEST_CASE("counter RNG replays from seed and stream") {
  CounterRng a(5, 1), b(5, 1), c(5, 2);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
  }
  CounterRng u(3);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform_open();
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    CHECK(u.below(7) < 7);
  }
  CounterRng s(4);
  auto idx = s.sample_without_replacement(10, 10);
  std::sort(idx.begin(), idx.end());
  for (Index i = 0; i < 10; ++i) CHECK(idx[static_cast<std::size_t>(i)] == i);
}

TEST_CASE("gen_weights default recipe") {
  const MixtureRecipe recipe = MixtureRecipe::spectra_default();
  const WeightMatrix w = gen_weights(recipe, 1);
  CHECK(w.rows() == 250);
  CHECK(w.cols() == 4);
  int two = 0, three = 0, four = 0;
  for (Index i = 0; i < w.rows(); ++i) {
    const auto nz = (w.row(i).array() > 0.0).count();
    two += nz == 2;
    three += nz == 3;
    four += nz == 4;
    CHECK(std::abs(w.row(i).sum() - 1.0) < 1e-12);
  }
  CHECK(two == 9);
  CHECK(three == 11);
  CHECK(four == 230);
  CHECK(gen_weights(recipe, 1) == w);
  CHECK(gen_weights(recipe, 2) != w);
}

TEST_CASE("gen_weights rejects invalid recipes") {
  MixtureRecipe bad;
  bad.n = 10;
  bad.r = 3;
  bad.blocks = {{5, 2, 5.0}};
  CHECK_THROWS_AS(gen_weights(bad, 0), InvalidInput);
  bad.blocks = {{10, 4, 5.0}};
  CHECK_THROWS_AS(gen_weights(bad, 0), InvalidInput);
}

TEST_CASE("Dirichlet marginal means") {
  CounterRng rng(6);
  const Vector alpha = Vector::Constant(4, 5.0);
  Vector sum = Vector::Zero(4), sq = Vector::Zero(4);
  const int draws = 10000;
  for (int t = 0; t < draws; ++t) {
    const Vector v = rng.dirichlet(alpha);
    sum += v;
    sq += v.cwiseProduct(v);
  }
  for (Index j = 0; j < 4; ++j) {
    const double mean = sum(j) / draws;
    const double sd = std::sqrt(sq(j) / draws - mean * mean);
    CHECK(std::abs(mean - 0.25) <= 3.0 * sd / std::sqrt(static_cast<double>(draws)));
  }
}

TEST_CASE("gen_dataset noise") {
  const ArchetypeSet h0 = gen_smooth_spectra(4, 87, 3);
  const NoisyDataset clean = gen_dataset(h0, MixtureRecipe::spectra_default(250, 0.0), 8);
  CHECK(clean.x == clean.x0);
  CHECK(clean.delta == 0.0);

  const NoisyDataset ds = gen_dataset(h0, MixtureRecipe::spectra_default(250, 1e-3), 8);
  CHECK(ds.w0 == clean.w0);
  CHECK((ds.x - (ds.w0 * ds.h0 + ds.z)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(ds.delta == doctest::Approx(ds.z.rowwise().norm().maxCoeff()));
  const double sd = std::sqrt(ds.z.squaredNorm() / static_cast<double>(ds.z.size()));
  CHECK(std::abs(sd - 1e-3) <= 0.05e-3);

  const NoisyDataset again = gen_dataset(h0, MixtureRecipe::spectra_default(250, 1e-3), 8);
  CHECK(again.x == ds.x);
  CHECK_THROWS_AS(gen_dataset(h0, MixtureRecipe::full_support(10, 3), 0), InvalidInput);
}

TEST_CASE("gen_toy_2d") {
  const NoisyDataset ds = gen_toy_2d();
  CHECK(ds.x.rows() == 500);
  CHECK(ds.x.cols() == 2);
  const HullProjector hull(ds.h0);
  for (Index i = 0; i < ds.x.rows(); ++i) {
    CHECK(hull.project(ds.x.row(i).transpose()).sq_distance < 1e-24);
    for (Index l = 0; l < 3; ++l) CHECK((ds.x.row(i) - ds.h0.row(l)).norm() > 1e-3);
  }
}

TEST_CASE("gen_smooth_spectra is non-negative") {
  const ArchetypeSet h = gen_smooth_spectra(4, 87, 1);
  CHECK(h.rows() == 4);
  CHECK(h.cols() == 87);
  CHECK(h.minCoeff() >= 0.0);
  CHECK(affinely_independent(h));
}

TEST_CASE("CSV round trip and errors") {
  CounterRng rng(9);
  Matrix m = oracle::gaussian(rng, 5, 3, 1e3);
  m(0, 0) = 1.0 / 3.0;
  m(1, 1) = 5e-324;
  m(2, 2) = -0.0;
  const auto dir = std::filesystem::temp_directory_path() / "archetypal_csv_test";
  std::filesystem::create_directories(dir);
  save_matrix_csv(m, dir / "m.csv", "a,b,c");
  const Matrix back = load_matrix_csv(dir / "m.csv");
  CHECK(back == m);
  CHECK(std::signbit(back(2, 2)));

  try {
    parse_matrix_csv("1,2,3\n4,5\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_matrix_csv("1,2\nx,3\n"), ParseError);
  CHECK_THROWS_AS(load_matrix_csv(dir / "does_not_exist.csv"), Error);

  const ArchetypeSet spectra = gen_smooth_spectra(4, 87, 2);
  const NoisyDataset ds = gen_dataset(spectra, MixtureRecipe::spectra_default(), 3);
  save_matrix_csv(ds.x, dir / "x.csv");
  const Matrix x = load_matrix_csv(dir / "x.csv");
  CHECK(x.rows() == 250);
  CHECK(x.cols() == 87);
  CHECK(x == ds.x);
}
