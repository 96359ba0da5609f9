#include "nsmp/poisson.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "nsmp/errors.hpp"
#include "nsmp/operators.hpp"
#include "nsmp/spectral.hpp"

namespace nsmp {
namespace {

/// Removes the mean and records the compatibility defect.
ScalarField remove_mean(const ScalarField& phi, const PoissonOptions& opts, double& defect) {
  const double m = mean(phi);
  defect = std::abs(m);
  const double scale = rms(phi);
  if (defect > opts.compat_tol * scale) {
    std::ostringstream msg;
    msg << "Poisson right-hand side is not mean-free: |mean| = " << defect << ", rms = " << scale;
    throw CompatibilityViolation(msg.str(), defect);
  }
  ScalarField out = phi;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= m;
  return out;
}

void subtract_mean(ScalarField& s) {
  const double m = mean(s);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] -= m;
}

double relative_residual(const ScalarField& minus_lap_v, const ScalarField& rhs, const ScalarField& phi) {
  const double denom = norm_l2(phi);
  if (denom == 0.0) return 0.0;
  return norm_l2(minus_lap_v - rhs) / denom;
}

ScalarField neumann_direct(const ScalarField& rhs) {
  const GridSpec& g = rhs.grid();
  ScalarField c = spectral::dct1(rhs);
  std::array<std::vector<double>, 3> eig;
  double norm = 1.0;
  for (int a = 0; a < 3; ++a) {
    const int n = g.n[a];
    const double h = g.spacing(a);
    eig[a].resize(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m)
      eig[a][m] = (2.0 - 2.0 * std::cos(std::numbers::pi * m / (n - 1))) / (h * h);
    norm *= 2.0 * (n - 1);
  }
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        const double lambda = eig[0][i] + eig[1][j] + eig[2][k];
        c.at(i, j, k) = (i == 0 && j == 0 && k == 0) ? 0.0 : c.at(i, j, k) / lambda;
      }
  ScalarField v = spectral::dct1(c);
  v *= 1.0 / norm;
  subtract_mean(v);
  return v;
}

ScalarField neumann_cg(const ScalarField& rhs, const PoissonOptions& opts, int& iterations) {
  const GridSpec& g = rhs.grid();
  const int max_iter = opts.max_iterations > 0 ? opts.max_iterations : static_cast<int>(10 * g.size());
  ScalarField x(g);
  ScalarField r = rhs;
  ScalarField p = r;
  double rr = inner_l2(r, r);
  const double target = opts.cg_tol * std::sqrt(rr);
  iterations = 0;
  while (std::sqrt(rr) > target) {
    if (iterations >= max_iter) {
      std::ostringstream msg;
      msg << "conjugate gradients did not converge in " << max_iter << " iterations (residual "
          << std::sqrt(rr) << ")";
      throw NonConvergence(msg.str());
    }
    ScalarField ap = -neumann_laplacian(p);
    const double alpha = rr / inner_l2(p, ap);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    const double rr_next = inner_l2(r, r);
    const double beta = rr_next / rr;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + beta * p[i];
    rr = rr_next;
    ++iterations;
  }
  subtract_mean(x);
  return x;
}

}  // namespace

ScalarField neumann_laplacian(const ScalarField& s) {
  const GridSpec& g = s.grid();
  ScalarField out(g);
  for (int k = 0; k < g.n[2]; ++k)
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) {
        const int idx[3] = {i, j, k};
        double acc = 0.0;
        for (int a = 0; a < 3; ++a) {
          if (!g.active(a)) continue;
          const int n = g.n[a];
          const double h2 = g.spacing(a) * g.spacing(a);
          auto value = [&](int shift) {
            int q[3] = {i, j, k};
            q[a] += shift;
            return s.at(q[0], q[1], q[2]);
          };
          const double f0 = s.at(i, j, k);
          if (idx[a] == 0)
            acc += 2.0 * (value(1) - f0) / h2;
          else if (idx[a] == n - 1)
            acc += 2.0 * (value(-1) - f0) / h2;
          else
            acc += (value(1) - 2.0 * f0 + value(-1)) / h2;
        }
        out.at(i, j, k) = acc;
      }
  return out;
}

PoissonResult solve_poisson_periodic(const ScalarField& phi, const PoissonOptions& opts) {
  const GridSpec& g = phi.grid();
  if (g.bc != Boundary::Periodic) throw InvalidGrid("periodic Poisson solve on a non-periodic grid");
  PoissonResult result;
  ScalarField rhs = remove_mean(phi, opts, result.compat_defect);
  spectral::Spectrum sp = spectral::forward(rhs);
  sp.for_each([&](int m, int j, int k, std::size_t idx) {
    const int q[3] = {m, j, k};
    double sym = 0.0;
    for (int a = 0; a < 3; ++a)
      if (g.active(a)) sym -= spectral::second_symbol(g, a, q[a]);
    sp.data[idx] = sym > 0.0 ? sp.data[idx] / sym : spectral::Complex(0.0);
  });
  result.solution = spectral::inverse(sp);
  subtract_mean(result.solution);
  result.residual_norm = relative_residual(-laplacian(result.solution), rhs, phi);
  return result;
}

PoissonResult solve_poisson_neumann(const ScalarField& phi, const PoissonOptions& opts) {
  const GridSpec& g = phi.grid();
  if (g.bc == Boundary::Periodic) return solve_poisson_periodic(phi, opts);
  PoissonResult result;
  ScalarField rhs = remove_mean(phi, opts, result.compat_defect);
  if (opts.method == PoissonMethod::Direct)
    result.solution = neumann_direct(rhs);
  else
    result.solution = neumann_cg(rhs, opts, result.iterations);
  result.residual_norm = relative_residual(-neumann_laplacian(result.solution), rhs, phi);
  return result;
}

PoissonResult solve_poisson(const ScalarField& phi, const PoissonOptions& opts) {
  return solve_poisson_neumann(phi, opts);
}

}  // namespace nsmp
