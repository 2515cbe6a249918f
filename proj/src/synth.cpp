#include <cmath>
#include <numeric>

#include "archetypal/rng.hpp"
#include "archetypal/synth.hpp"

namespace archetypal {
namespace {

// Independent streams under one seed.
constexpr std::uint64_t kWeightStream = 1;
constexpr std::uint64_t kNoiseStream = 2;
constexpr std::uint64_t kSpectraStream = 3;
constexpr std::uint64_t kSeparableStream = 4;

}  // namespace

void MixtureRecipe::validate() const {
  if (n < 1 || r < 1) throw InvalidInput("MixtureRecipe: n and r must be >= 1");
  if (!(noise_sigma >= 0.0)) {
    throw InvalidInput("MixtureRecipe: noise_sigma must be non-negative");
  }
  Index total = 0;
  for (const SparsityBlock& b : blocks) {
    if (b.row_count < 0) throw InvalidInput("MixtureRecipe: negative row count");
    if (b.support_size < 1 || b.support_size > r) {
      throw InvalidInput("MixtureRecipe: support size must be in [1, r]");
    }
    if (!(b.dirichlet_param > 0.0)) {
      throw InvalidInput("MixtureRecipe: Dirichlet parameter must be positive");
    }
    total += b.row_count;
  }
  if (total != n) {
    throw InvalidInput("MixtureRecipe: block row counts sum to " +
                       std::to_string(total) + ", expected " +
                       std::to_string(n));
  }
}

MixtureRecipe MixtureRecipe::spectra_default(Index n, double sigma) {
  if (n < 20) throw InvalidInput("spectra_default: n must be >= 20");
  MixtureRecipe recipe;
  recipe.n = n;
  recipe.r = 4;
  recipe.blocks = {{9, 2, 5.0}, {11, 3, 5.0}, {n - 20, 4, 5.0}};
  recipe.noise_sigma = sigma;
  return recipe;
}

MixtureRecipe MixtureRecipe::full_support(Index n, Index r, double param,
                                          double sigma) {
  MixtureRecipe recipe;
  recipe.n = n;
  recipe.r = r;
  recipe.blocks = {{n, r, param}};
  recipe.noise_sigma = sigma;
  return recipe;
}

WeightMatrix gen_weights(const MixtureRecipe& recipe, std::uint64_t seed) {
  recipe.validate();
  CounterRng rng(seed, kWeightStream);
  WeightMatrix w = WeightMatrix::Zero(recipe.n, recipe.r);
  Index row = 0;
  for (const SparsityBlock& b : recipe.blocks) {
    const Vector alpha = Vector::Constant(b.support_size, b.dirichlet_param);
    for (Index i = 0; i < b.row_count; ++i, ++row) {
      const std::vector<Index> support =
          rng.sample_without_replacement(recipe.r, b.support_size);
      const Vector values = rng.dirichlet(alpha);
      for (Index s = 0; s < b.support_size; ++s) {
        w(row, support[static_cast<std::size_t>(s)]) = values(s);
      }
    }
  }
  return w;
}

NoisyDataset gen_dataset(const ArchetypeSet& h0, const MixtureRecipe& recipe,
                         std::uint64_t seed) {
  recipe.validate();
  if (recipe.r != h0.rows()) {
    throw InvalidInput("gen_dataset: recipe.r does not match the rows of H0");
  }
  require_finite(h0, "H0");
  NoisyDataset ds;
  ds.seed = seed;
  ds.h0 = h0;
  ds.w0 = gen_weights(recipe, seed);
  ds.x0 = ds.w0 * h0;
  add_noise(ds, recipe.noise_sigma);
  return ds;
}

void add_noise(NoisyDataset& ds, double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw InvalidInput("noise sigma must be finite and non-negative");
  }
  ds.sigma = sigma;
  ds.z = Matrix::Zero(ds.x0.rows(), ds.x0.cols());
  if (sigma > 0.0) {
    CounterRng rng(ds.seed, kNoiseStream);
    for (Index i = 0; i < ds.z.rows(); ++i) {
      for (Index j = 0; j < ds.z.cols(); ++j) ds.z(i, j) = sigma * rng.normal();
    }
  }
  ds.x = ds.x0 + ds.z;
  ds.delta = ds.z.rows() > 0 ? ds.z.rowwise().norm().maxCoeff() : 0.0;
}

ArchetypeSet toy_triangle() {
  ArchetypeSet h(3, 2);
  h << 0.0, 0.0,
       1.0, 0.0,
       0.5, 0.9;
  return h;
}

NoisyDataset gen_toy_2d(Index n, std::uint64_t seed, double min_vertex_gap) {
  if (n < 3) throw InvalidInput("gen_toy_2d: n must be >= 3");
  const ArchetypeSet h0 = toy_triangle();
  const MixtureRecipe recipe = MixtureRecipe::full_support(n, 3, 5.0);
  for (std::uint64_t attempt = 0;; ++attempt) {
    NoisyDataset ds = gen_dataset(h0, recipe, seed + attempt);
    double gap = std::numeric_limits<double>::infinity();
    for (Index l = 0; l < h0.rows(); ++l) {
      gap = std::min(gap, (ds.x.rowwise() - h0.row(l)).rowwise().norm().minCoeff());
    }
    if (gap > min_vertex_gap) return ds;
  }
}

ArchetypeSet gen_smooth_spectra(Index r, Index d, std::uint64_t seed) {
  if (r < 1 || d < 2) throw InvalidInput("gen_smooth_spectra: need r >= 1, d >= 2");
  CounterRng rng(seed, kSpectraStream);
  ArchetypeSet h = ArchetypeSet::Zero(r, d);
  for (Index l = 0; l < r; ++l) {
    const int bumps = 3 + static_cast<int>(rng.below(4));
    for (int b = 0; b < bumps; ++b) {
      const double center = rng.uniform() * static_cast<double>(d - 1);
      const double width = 1.5 + 6.0 * rng.uniform();
      const double height = 0.2 + 0.8 * rng.uniform();
      for (Index j = 0; j < d; ++j) {
        const double t = (static_cast<double>(j) - center) / width;
        h(l, j) += height * std::exp(-0.5 * t * t);
      }
    }
  }
  return h;
}

NoisyDataset gen_separable(Index n, Index r, Index d, std::uint64_t seed) {
  if (r < 1 || n < r || d < r - 1) {
    throw InvalidInput("gen_separable: need n >= r and d >= r - 1");
  }
  CounterRng rng(seed, kSeparableStream);
  ArchetypeSet h0(r, d);
  for (Index l = 0; l < r; ++l) {
    for (Index j = 0; j < d; ++j) h0(l, j) = rng.normal();
  }
  NoisyDataset ds;
  ds.seed = seed;
  ds.h0 = h0;
  ds.w0 = WeightMatrix::Zero(n, r);
  // Archetype rows sit at random positions among the data.
  const std::vector<Index> slots = rng.sample_without_replacement(n, r);
  std::vector<char> is_vertex(static_cast<std::size_t>(n), 0);
  for (Index l = 0; l < r; ++l) {
    ds.w0(slots[static_cast<std::size_t>(l)], l) = 1.0;
    is_vertex[static_cast<std::size_t>(slots[static_cast<std::size_t>(l)])] = 1;
  }
  const Vector alpha = Vector::Constant(r, 1.0);
  for (Index i = 0; i < n; ++i) {
    if (!is_vertex[static_cast<std::size_t>(i)]) ds.w0.row(i) = rng.dirichlet(alpha).transpose();
  }
  ds.x0 = ds.w0 * h0;
  // Vertex rows are copied exactly rather than formed by the product.
  for (Index l = 0; l < r; ++l) ds.x0.row(slots[static_cast<std::size_t>(l)]) = h0.row(l);
  ds.x = ds.x0;
  ds.z = Matrix::Zero(n, d);
  return ds;
}

}  // namespace archetypal
