#pragma once

#include <cstdint>

#include "nsmp/field.hpp"

namespace nsmp {

/// W = grad R + VJ with VJ divergence-free and orthogonal to gradients.
struct Decomposition {
  /// Mean-zero potential R.
  ScalarField potential;
  VectorField gradient_part;
  VectorField solenoidal;
  /// |<grad R, VJ>| / (||grad R|| ||VJ|| + eps)
  double orthogonality_defect = 0.0;
  /// ||div VJ|| / (||W|| + eps)
  double div_defect = 0.0;
  /// |mean(div W)| seen by the Poisson solve.
  double compat_defect = 0.0;
};

struct HelmholtzOptions {
  /// Largest admissible max|W.n| on the walls relative to max|W|.
  double flux_tol = 1e-8;
};

/// Splits W by solving Lap R = div W with dR/dn = 0 and setting VJ = W - grad R.
///
/// Periodic grids solve in Fourier space with the symbol of the grid's own
/// gradient, so the discrete projector is exact. NoSlipBox grids use the
/// Neumann solver and one-sided stencils; their O(h^2) defects are recorded,
/// not rejected. Throws BoundaryFluxViolation if W.n does not vanish on the
/// walls.
Decomposition leray_decompose(const VectorField& w, const HelmholtzOptions& opts = {});

/// Solenoidal part VJ of leray_decompose.
VectorField project_solenoidal(const VectorField& w, const HelmholtzOptions& opts = {});

/// Random smooth divergence-free field. On NoSlipBox grids it is the discrete
/// curl of a potential vanishing on the walls, with wall nodes set to zero, so
/// it is divergence-free up to O(h^2) next to the walls.
VectorField random_solenoidal_field(const GridSpec& grid, std::uint64_t seed, int max_mode = 3);

}  // namespace nsmp
