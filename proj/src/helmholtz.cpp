#include "nsmp/helmholtz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nsmp/errors.hpp"
#include "nsmp/operators.hpp"
#include "nsmp/poisson.hpp"
#include "nsmp/random_fields.hpp"
#include "nsmp/spectral.hpp"

namespace nsmp {
namespace {

constexpr double kEps = 1e-300;

double wall_flux(const VectorField& w) {
  const GridSpec& g = w.grid();
  double m = 0.0;
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        const int idx[3] = {i, j, k};
        for (int a = 0; a < 3; ++a)
          if (idx[a] == 0 || idx[a] == g.n[a] - 1) m = std::max(m, std::abs(w[a].at(i, j, k)));
      }
  return m;
}

void periodic_split(const VectorField& w, Decomposition& d) {
  const GridSpec& g = w.grid();
  using spectral::Complex;
  std::array<spectral::Spectrum, 3> sp{spectral::forward(w[0]), spectral::forward(w[1]), spectral::forward(w[2])};
  spectral::Spectrum r = sp[0];
  std::array<spectral::Spectrum, 3> gr = sp;
  sp[0].for_each([&](int m, int j, int k, std::size_t idx) {
    const int q[3] = {m, j, k};
    double s[3];
    double s2 = 0.0;
    Complex sw(0.0);
    for (int a = 0; a < 3; ++a) {
      s[a] = g.active(a) ? spectral::first_symbol(g, a, q[a]) : 0.0;
      s2 += s[a] * s[a];
      sw += s[a] * sp[a].data[idx];
    }
    if (s2 > 0.0) {
      r.data[idx] = Complex(0.0, -1.0) * sw / s2;
      for (int a = 0; a < 3; ++a) gr[a].data[idx] = s[a] * sw / s2;
    } else {
      r.data[idx] = 0.0;
      for (int a = 0; a < 3; ++a) gr[a].data[idx] = 0.0;
    }
  });
  d.potential = spectral::inverse(r);
  d.gradient_part = VectorField(spectral::inverse(gr[0]), spectral::inverse(gr[1]), spectral::inverse(gr[2]));
  d.compat_defect = std::abs(mean(divergence(w)));
}

void noslip_split(const VectorField& w, const HelmholtzOptions& opts, Decomposition& d) {
  const double flux = wall_flux(w);
  const double scale = w.max_abs();
  if (flux > opts.flux_tol * scale) {
    std::ostringstream msg;
    msg << "normal component on the walls is " << flux << " (field max " << scale
        << "); a homogeneous Neumann decomposition is inconsistent";
    throw BoundaryFluxViolation(msg.str());
  }
  PoissonOptions popts;
  popts.compat_tol = kNoCompatCheck;
  PoissonResult pr = solve_poisson_neumann(-divergence(w), popts);
  d.compat_defect = pr.compat_defect;
  d.potential = std::move(pr.solution);
  d.gradient_part = gradient(d.potential);
}

}  // namespace

Decomposition leray_decompose(const VectorField& w, const HelmholtzOptions& opts) {
  Decomposition d;
  if (w.grid().bc == Boundary::Periodic)
    periodic_split(w, d);
  else
    noslip_split(w, opts, d);
  d.solenoidal = w - d.gradient_part;
  const double gnorm = norm_l2(d.gradient_part);
  const double snorm = norm_l2(d.solenoidal);
  d.orthogonality_defect = std::abs(inner_l2(d.gradient_part, d.solenoidal)) / (gnorm * snorm + kEps);
  d.div_defect = norm_l2(divergence(d.solenoidal)) / (norm_l2(w) + kEps);
  return d;
}

VectorField project_solenoidal(const VectorField& w, const HelmholtzOptions& opts) {
  return leray_decompose(w, opts).solenoidal;
}

VectorField random_solenoidal_field(const GridSpec& grid, std::uint64_t seed, int max_mode) {
  if (grid.bc == Boundary::Periodic) return project_solenoidal(random_smooth_vector(grid, seed, max_mode));
  // Curl of a potential that vanishes to high order on the walls.
  VectorField a = random_smooth_vector(grid, seed, max_mode);
  const auto bump = ScalarField::sample(grid, [&](double x, double y, double z) {
    const double sx = std::sin(std::numbers::pi * x / grid.length[0]);
    const double sy = std::sin(std::numbers::pi * y / grid.length[1]);
    const double sz = std::sin(std::numbers::pi * z / grid.length[2]);
    return sx * sx * sy * sy * sz * sz;
  });
  for (int c = 0; c < 3; ++c) a[c] *= bump;
  VectorField v = curl(a);
  zero_boundary(v);
  return v;
}

}  // namespace nsmp
