#include "nsmp/random_fields.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace nsmp {
namespace {

/// Basis functions along one axis, sampled at the grid nodes.
std::vector<std::vector<double>> axis_basis(const GridSpec& g, int axis, int max_mode) {
  std::vector<std::vector<double>> basis;
  const int n = g.n[axis];
  const double l = g.length[axis];
  auto sampled = [&](auto f) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[i] = f(g.coord(axis, i));
    return v;
  };
  if (!g.active(axis)) {
    basis.push_back(std::vector<double>(static_cast<std::size_t>(n), 1.0));
    return basis;
  }
  if (g.bc == Boundary::NoSlipBox) {
    for (int m = 1; m <= max_mode; ++m)
      basis.push_back(sampled([&](double x) { return std::sin(std::numbers::pi * m * x / l) / (1.0 + m * m); }));
    return basis;
  }
  basis.push_back(std::vector<double>(static_cast<std::size_t>(n), 1.0));
  for (int m = 1; m <= max_mode && 2 * m < n; ++m) {
    const double k = 2.0 * std::numbers::pi * m / l;
    basis.push_back(sampled([&](double x) { return std::cos(k * x) / (1.0 + m * m); }));
    basis.push_back(sampled([&](double x) { return std::sin(k * x) / (1.0 + m * m); }));
  }
  return basis;
}

ScalarField random_scalar(const GridSpec& g, std::mt19937_64& rng, int max_mode) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto bx = axis_basis(g, 0, max_mode);
  const auto by = axis_basis(g, 1, max_mode);
  const auto bz = axis_basis(g, 2, max_mode);
  ScalarField s(g);
  for (const auto& fz : bz)
    for (const auto& fy : by)
      for (const auto& fx : bx) {
        const double c = normal(rng);
        for (int k = 0; k < g.n[2]; ++k)
          for (int j = 0; j < g.n[1]; ++j) {
            const double cyz = c * fy[j] * fz[k];
            const std::size_t base = g.index(0, j, k);
            for (int i = 0; i < g.n[0]; ++i) s[base + i] += cyz * fx[i];
          }
      }
  return s;
}

}  // namespace

ScalarField random_smooth_scalar(const GridSpec& grid, std::uint64_t seed, int max_mode) {
  std::mt19937_64 rng(seed);
  return random_scalar(grid, rng, max_mode);
}

VectorField random_smooth_vector(const GridSpec& grid, std::uint64_t seed, int max_mode) {
  std::mt19937_64 rng(seed);
  ScalarField x = random_scalar(grid, rng, max_mode);
  ScalarField y = random_scalar(grid, rng, max_mode);
  ScalarField z = random_scalar(grid, rng, max_mode);
  return VectorField(std::move(x), std::move(y), std::move(z));
}

}  // namespace nsmp
