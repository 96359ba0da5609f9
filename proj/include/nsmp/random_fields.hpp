#pragma once

#include <cstdint>

#include "nsmp/field.hpp"

namespace nsmp {

/// Smooth pseudo-random field built from low modes (|m| <= max_mode per
/// direction) with amplitudes decaying like 1/(1+m^2) per direction.
/// Periodic grids use the Fourier basis; NoSlipBox grids use sin(pi m x/l),
/// which vanishes on the walls. Deterministic for a given seed.
ScalarField random_smooth_scalar(const GridSpec& grid, std::uint64_t seed, int max_mode = 3);
VectorField random_smooth_vector(const GridSpec& grid, std::uint64_t seed, int max_mode = 3);

}  // namespace nsmp
