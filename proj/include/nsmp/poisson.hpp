#pragma once

#include <limits>

#include "nsmp/field.hpp"

namespace nsmp {

enum class PoissonMethod { Direct, ConjugateGradient };

struct PoissonOptions {
  /// Raise CompatibilityViolation when |mean(phi)| > compat_tol * rms(phi).
  /// Infinity disables the check; the defect is still recorded.
  double compat_tol = 1e-8;
  PoissonMethod method = PoissonMethod::Direct;
  double cg_tol = 1e-10;
  /// 0 selects 10 * node count.
  int max_iterations = 0;
};

inline constexpr double kNoCompatCheck = std::numeric_limits<double>::infinity();

struct PoissonResult {
  /// Mean-zero V with -Lap V = phi - mean(phi).
  ScalarField solution;
  /// ||-Lap V - (phi - mean phi)||_2 / ||phi||_2, 0 for phi == 0.
  double residual_norm = 0.0;
  /// |mean(phi)|, removed before solving.
  double compat_defect = 0.0;
  int iterations = 0;
};

/// -Lap V = phi with dV/dn = 0 on the walls of a NoSlipBox grid. The
/// Laplacian is the 3-point stencil with reflected ghost nodes, solved
/// directly in the DCT-I basis or by conjugate gradients. Periodic grids are
/// forwarded to solve_poisson_periodic.
PoissonResult solve_poisson_neumann(const ScalarField& phi, const PoissonOptions& opts = {});

/// -Lap V = phi on a periodic grid, diagonal in Fourier space. The symbol is
/// k^2 for spectral grids and (2-2cos(kh))/h^2 for finite differences, so it
/// inverts laplacian() exactly.
PoissonResult solve_poisson_periodic(const ScalarField& phi, const PoissonOptions& opts = {});

/// Dispatches on the grid's boundary kind.
PoissonResult solve_poisson(const ScalarField& phi, const PoissonOptions& opts = {});

/// The discrete operator inverted by solve_poisson_neumann: 3-point Laplacian
/// with 2(f1 - f0)/h^2 at the walls.
ScalarField neumann_laplacian(const ScalarField& s);

}  // namespace nsmp
