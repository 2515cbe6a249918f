#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "archetypal/types.hpp"

namespace archetypal {

struct SparsityBlock {
  Index row_count = 0;
  Index support_size = 0;
  double dirichlet_param = 5.0;
};

struct MixtureRecipe {
  Index n = 0;
  Index r = 0;
  std::vector<SparsityBlock> blocks;
  double noise_sigma = 0.0;

  void validate() const;

  // 9 rows on edges (Dir(5,5)), 11 rows on 2-faces (Dir(5,5,5)) and the
  // rest fully mixed Dir(5,5,5,5). Requires r = 4 and n >= 20.
  static MixtureRecipe spectra_default(Index n = 250, double sigma = 0.0);
  // Every row fully supported with a symmetric Dirichlet.
  static MixtureRecipe full_support(Index n, Index r, double param = 5.0,
                                    double sigma = 0.0);
};

struct NoisyDataset {
  DataMatrix x;
  DataMatrix x0;
  WeightMatrix w0;
  ArchetypeSet h0;
  DataMatrix z;
  double sigma = 0.0;
  double delta = 0.0;  // max row norm of z
  std::uint64_t seed = 0;
};

/// Block-sparse Dirichlet weights. Supports are drawn uniformly (independent
/// per row); blocks fill rows in order.
WeightMatrix gen_weights(const MixtureRecipe& recipe, std::uint64_t seed);

/// X = W0 H0 + Z with i.i.d. N(0, sigma^2) noise drawn in (row, column)
/// order. Weights and noise use separate streams, so changing sigma leaves
/// W0 unchanged.
NoisyDataset gen_dataset(const ArchetypeSet& h0, const MixtureRecipe& recipe,
                         std::uint64_t seed);

/// Replaces the noise of `ds` with fresh N(0, sigma^2) entries drawn from
/// the dataset's seed and recomputes X and delta.
void add_noise(NoisyDataset& ds, double sigma);

/// Triangle used by the two-dimensional toy problem.
ArchetypeSet toy_triangle();

/// Noiseless Dir(5,5,5) mixtures of toy_triangle(). Draws whose rows come
/// within `min_vertex_gap` of a vertex are rejected and redrawn with the
/// next seed; the seed actually used is stored in the result.
NoisyDataset gen_toy_2d(Index n = 500, std::uint64_t seed = 0,
                        double min_vertex_gap = 1e-3);

/// Smooth non-negative "spectra": each row is a sum of Gaussian bumps on a
/// uniform grid of d points.
ArchetypeSet gen_smooth_spectra(Index r, Index d, std::uint64_t seed);

/// Rows are archetypes placed exactly among the data (separable), followed
/// by random mixtures of them. Returns the dataset and the archetype rows.
NoisyDataset gen_separable(Index n, Index r, Index d, std::uint64_t seed);

}  // namespace archetypal
