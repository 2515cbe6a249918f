#pragma once

#include <optional>
#include <vector>

#include "archetypal/types.hpp"

namespace archetypal {

enum class InitMethod { spectral, successive_projections };

struct InitResult {
  ArchetypeSet archetypes;
  std::optional<std::vector<Index>> selected_indices;
  InitMethod method = InitMethod::spectral;
  // Spectral only: r exceeded the numerical rank; trailing rows are an
  // arbitrary orthonormal completion.
  bool rank_deficient = false;
};

/// Top-r right singular vectors of X, ordered by decreasing singular value,
/// each signed so its largest-magnitude entry is positive.
InitResult spectral_init(const DataMatrix& x, Index r);

/// Greedy farthest-point selection: the row farthest from the origin, then
/// repeatedly the row farthest from the affine hull of the rows chosen so
/// far. Ties go to the lowest row index. Throws DegeneracyError (with the
/// count found) when fewer than r affinely independent rows exist.
InitResult successive_projections_init(const DataMatrix& x, Index r,
                                       Exec exec = Exec::parallel);

}  // namespace archetypal
