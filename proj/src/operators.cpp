#include "nsmp/operators.hpp"

#include <cassert>
#include <cmath>
#include <vector>

#include "nsmp/errors.hpp"
#include "nsmp/spectral.hpp"

namespace nsmp {
namespace {

using spectral::Complex;

bool spectral_grid(const GridSpec& g) { return g.scheme == Scheme::Spectral; }

std::size_t stride_of(const GridSpec& g, int axis) {
  if (axis == 0) return 1;
  if (axis == 1) return static_cast<std::size_t>(g.n[0]);
  return static_cast<std::size_t>(g.n[0]) * g.n[1];
}

/// Applies `op(in, out, n, stride)` to every grid line along `axis`.
template <class Op>
ScalarField map_lines(const ScalarField& in, int axis, Op op) {
  const GridSpec& g = in.grid();
  ScalarField out(g);
  const std::size_t stride = stride_of(g, axis);
  const int n = g.n[axis];
  const int o1 = (axis + 1) % 3;
  const int o2 = (axis + 2) % 3;
  for (int q = 0; q < g.n[o2]; ++q)
    for (int p = 0; p < g.n[o1]; ++p) {
      std::array<int, 3> base{};
      base[axis] = 0;
      base[o1] = p;
      base[o2] = q;
      const std::size_t start = g.index(base[0], base[1], base[2]);
      op(in.values().data() + start, out.values().data() + start, n, stride);
    }
  return out;
}

ScalarField fd_first(const ScalarField& s, int axis) {
  const GridSpec& g = s.grid();
  const double h = g.spacing(axis);
  const bool periodic = g.bc == Boundary::Periodic;
  return map_lines(s, axis, [&](const double* f, double* d, int n, std::size_t st) {
    auto F = [&](int i) { return f[static_cast<std::size_t>(i) * st]; };
    auto D = [&](int i) -> double& { return d[static_cast<std::size_t>(i) * st]; };
    if (periodic) {
      for (int i = 0; i < n; ++i) D(i) = (F((i + 1) % n) - F((i + n - 1) % n)) / (2.0 * h);
      return;
    }
    D(0) = (-3.0 * F(0) + 4.0 * F(1) - F(2)) / (2.0 * h);
    for (int i = 1; i < n - 1; ++i) D(i) = (F(i + 1) - F(i - 1)) / (2.0 * h);
    D(n - 1) = (3.0 * F(n - 1) - 4.0 * F(n - 2) + F(n - 3)) / (2.0 * h);
  });
}

ScalarField fd_second(const ScalarField& s, int axis) {
  const GridSpec& g = s.grid();
  const double h2 = g.spacing(axis) * g.spacing(axis);
  const bool periodic = g.bc == Boundary::Periodic;
  return map_lines(s, axis, [&](const double* f, double* d, int n, std::size_t st) {
    auto F = [&](int i) { return f[static_cast<std::size_t>(i) * st]; };
    auto D = [&](int i) -> double& { return d[static_cast<std::size_t>(i) * st]; };
    if (periodic) {
      for (int i = 0; i < n; ++i) D(i) = (F((i + 1) % n) - 2.0 * F(i) + F((i + n - 1) % n)) / h2;
      return;
    }
    D(0) = (2.0 * F(0) - 5.0 * F(1) + 4.0 * F(2) - F(3)) / h2;
    for (int i = 1; i < n - 1; ++i) D(i) = (F(i + 1) - 2.0 * F(i) + F(i - 1)) / h2;
    D(n - 1) = (2.0 * F(n - 1) - 5.0 * F(n - 2) + 4.0 * F(n - 3) - F(n - 4)) / h2;
  });
}

/// Multiplies a spectrum by a per-mode factor and transforms back.
template <class Symbol>
ScalarField apply_symbol(const spectral::Spectrum& sp, Symbol symbol) {
  spectral::Spectrum out = sp;
  sp.for_each([&](int m, int j, int k, std::size_t idx) { out.data[idx] *= symbol(m, j, k); });
  return spectral::inverse(out);
}

ScalarField spectral_partial(const spectral::Spectrum& sp, int axis) {
  const GridSpec& g = sp.grid;
  return apply_symbol(sp, [&](int m, int j, int k) {
    const int idx[3] = {m, j, k};
    return Complex(0.0, spectral::first_symbol(g, axis, idx[axis]));
  });
}

std::vector<double> axis_weights(const GridSpec& g, int axis) {
  std::vector<double> w(static_cast<std::size_t>(g.n[axis]), g.spacing(axis));
  if (g.bc == Boundary::NoSlipBox && g.n[axis] > 1) {
    w.front() *= 0.5;
    w.back() *= 0.5;
  }
  return w;
}

}  // namespace

ScalarField partial(const ScalarField& s, int axis) {
  const GridSpec& g = s.grid();
  if (!g.active(axis)) return ScalarField(g);
  if (spectral_grid(g)) return spectral_partial(spectral::forward(s), axis);
  return fd_first(s, axis);
}

ScalarField second_partial(const ScalarField& s, int a, int b) {
  const GridSpec& g = s.grid();
  if (!g.active(a) || !g.active(b)) return ScalarField(g);
  if (spectral_grid(g)) {
    return apply_symbol(spectral::forward(s), [&](int m, int j, int k) {
      const int idx[3] = {m, j, k};
      if (a == b) return Complex(spectral::second_symbol(g, a, idx[a]), 0.0);
      return Complex(-spectral::first_symbol(g, a, idx[a]) * spectral::first_symbol(g, b, idx[b]), 0.0);
    });
  }
  if (a == b) return fd_second(s, a);
  return fd_first(fd_first(s, a), b);
}

VectorField gradient(const ScalarField& s) {
  const GridSpec& g = s.grid();
  if (spectral_grid(g)) {
    const auto sp = spectral::forward(s);
    VectorField out(g);
    for (int a = 0; a < 3; ++a)
      if (g.active(a)) out[a] = spectral_partial(sp, a);
    return out;
  }
  return VectorField(partial(s, 0), partial(s, 1), partial(s, 2));
}

ScalarField divergence(const VectorField& v) {
  ScalarField d = partial(v[0], 0);
  d += partial(v[1], 1);
  d += partial(v[2], 2);
  return d;
}

VectorField curl(const VectorField& v) {
  return VectorField(partial(v[2], 1) - partial(v[1], 2), partial(v[0], 2) - partial(v[2], 0),
                     partial(v[1], 0) - partial(v[0], 1));
}

ScalarField laplacian(const ScalarField& s) {
  const GridSpec& g = s.grid();
  if (spectral_grid(g)) {
    return apply_symbol(spectral::forward(s), [&](int m, int j, int k) {
      const int idx[3] = {m, j, k};
      double sym = 0.0;
      for (int a = 0; a < 3; ++a)
        if (g.active(a)) sym += spectral::second_symbol(g, a, idx[a]);
      return Complex(sym, 0.0);
    });
  }
  ScalarField out(g);
  for (int a = 0; a < 3; ++a)
    if (g.active(a)) out += fd_second(s, a);
  return out;
}

VectorField laplacian(const VectorField& v) {
  return VectorField(laplacian(v[0]), laplacian(v[1]), laplacian(v[2]));
}

GradientTensor gradient_tensor(const VectorField& v) {
  GradientTensor t;
  for (int a = 0; a < 3; ++a) {
    VectorField g = gradient(v[a]);
    for (int b = 0; b < 3; ++b) t[a][b] = std::move(g[b]);
  }
  return t;
}

double inner_l2(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid());
  const GridSpec& g = a.grid();
  const auto wx = axis_weights(g, 0);
  const auto wy = axis_weights(g, 1);
  const auto wz = axis_weights(g, 2);
  double total = 0.0;
  for (int k = 0; k < g.n[2]; ++k) {
    double plane = 0.0;
    for (int j = 0; j < g.n[1]; ++j) {
      double line = 0.0;
      const std::size_t base = g.index(0, j, k);
      for (int i = 0; i < g.n[0]; ++i) line += wx[i] * a[base + i] * b[base + i];
      plane += wy[j] * line;
    }
    total += wz[k] * plane;
  }
  return total;
}

double inner_l2(const VectorField& a, const VectorField& b) {
  return inner_l2(a[0], b[0]) + inner_l2(a[1], b[1]) + inner_l2(a[2], b[2]);
}

double norm_l2(const ScalarField& s) { return std::sqrt(inner_l2(s, s)); }
double norm_l2(const VectorField& v) { return std::sqrt(inner_l2(v, v)); }
double norm_linf(const ScalarField& s) { return s.max_abs(); }
double norm_linf(const VectorField& v) { return v.max_abs(); }

double mean(const ScalarField& s) {
  return inner_l2(s, ScalarField(s.grid(), 1.0)) / s.grid().volume();
}

double rms(const ScalarField& s) { return norm_l2(s) / std::sqrt(s.grid().volume()); }

ScalarField kinetic_energy_density(const VectorField& u) {
  ScalarField e(u.grid());
  for (std::size_t i = 0; i < e.size(); ++i)
    e[i] = 0.5 * (u[0][i] * u[0][i] + u[1][i] * u[1][i] + u[2][i] * u[2][i]);
  return e;
}

ScalarField dot(const VectorField& a, const VectorField& b) {
  require_same_grid(a.grid(), b.grid());
  ScalarField d(a.grid());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = a[0][i] * b[0][i] + a[1][i] * b[1][i] + a[2][i] * b[2][i];
  return d;
}

VectorField cross(const VectorField& a, const VectorField& b) {
  require_same_grid(a.grid(), b.grid());
  VectorField c(a.grid());
  for (std::size_t i = 0; i < a[0].size(); ++i) {
    c[0][i] = a[1][i] * b[2][i] - a[2][i] * b[1][i];
    c[1][i] = a[2][i] * b[0][i] - a[0][i] * b[2][i];
    c[2][i] = a[0][i] * b[1][i] - a[1][i] * b[0][i];
  }
  return c;
}

VectorField convection(const VectorField& u) {
  const GradientTensor t = gradient_tensor(u);
  VectorField c(u.grid());
  for (int a = 0; a < 3; ++a)
    for (std::size_t i = 0; i < u[0].size(); ++i)
      c[a][i] = u[0][i] * t[a][0][i] + u[1][i] * t[a][1][i] + u[2][i] * t[a][2][i];
  return c;
}

ScalarField gradient_contraction(const VectorField& u) {
  const GradientTensor t = gradient_tensor(u);
  ScalarField s(u.grid());
  for (std::size_t i = 0; i < s.size(); ++i) {
    double acc = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) acc += t[a][b][i] * t[b][a][i];
    s[i] = acc;
  }
  return s;
}

ScalarField dealias(const ScalarField& s) {
  if (!spectral_grid(s.grid())) return s;
  return spectral::dealias(s);
}

VectorField dealias(const VectorField& v) {
  return VectorField(dealias(v[0]), dealias(v[1]), dealias(v[2]));
}

double trapezoid(std::span<const double> times, std::span<const double> values) {
  assert(times.size() == values.size());
  double total = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i)
    total += 0.5 * (times[i] - times[i - 1]) * (values[i] + values[i - 1]);
  return total;
}

}  // namespace nsmp
