#pragma once

#include <array>
#include <span>

#include "nsmp/field.hpp"

namespace nsmp {

/// Derivative along one axis. Spectral grids multiply by i*k (Nyquist mode
/// dropped); finite-difference grids use second-order centered stencils,
/// wrapped on periodic grids and one-sided at NoSlipBox walls. Zero along an
/// invariant (single-node) direction.
ScalarField partial(const ScalarField& s, int axis);
/// Mixed or pure second derivative d^2 s / dx_a dx_b.
ScalarField second_partial(const ScalarField& s, int a, int b);

VectorField gradient(const ScalarField& s);
ScalarField divergence(const VectorField& v);
VectorField curl(const VectorField& v);
ScalarField laplacian(const ScalarField& s);
VectorField laplacian(const VectorField& v);

/// G[a][b] = dU_a / dx_b.
using GradientTensor = std::array<std::array<ScalarField, 3>, 3>;
GradientTensor gradient_tensor(const VectorField& v);

/// Quadrature weights: uniform h on periodic axes, trapezoid (half weight on
/// walls) on NoSlipBox axes; an invariant axis has weight l.
double inner_l2(const ScalarField& a, const ScalarField& b);
double inner_l2(const VectorField& a, const VectorField& b);
double norm_l2(const ScalarField& s);
double norm_l2(const VectorField& v);
double norm_linf(const ScalarField& s);
double norm_linf(const VectorField& v);
/// Integral over the box divided by its volume.
double mean(const ScalarField& s);
/// Root mean square, norm_l2 / sqrt(volume).
double rms(const ScalarField& s);

/// E = (U1^2 + U2^2 + U3^2) / 2.
ScalarField kinetic_energy_density(const VectorField& u);
ScalarField dot(const VectorField& a, const VectorField& b);
VectorField cross(const VectorField& a, const VectorField& b);
/// (U . grad) U.
VectorField convection(const VectorField& u);
/// Sum over a, b of dU_a/dx_b * dU_b/dx_a.
ScalarField gradient_contraction(const VectorField& u);

/// 2/3-rule truncation for spectral grids; identity otherwise.
ScalarField dealias(const ScalarField& s);
VectorField dealias(const VectorField& v);

/// Trapezoid rule over possibly non-uniform sample times.
double trapezoid(std::span<const double> times, std::span<const double> values);

}  // namespace nsmp
