#include "nsmp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nsmp/errors.hpp"
#include "nsmp/field_io.hpp"
#include "nsmp/helmholtz.hpp"
#include "nsmp/operators.hpp"

namespace nsmp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double gradient_norm(const VectorField& v) {
  double s = 0.0;
  for (int a = 0; a < 3; ++a) {
    const VectorField g = gradient(v[a]);
    s += inner_l2(g, g);
  }
  return std::sqrt(s);
}

}  // namespace

std::string to_string(Integrator integrator) {
  return integrator == Integrator::Euler ? "euler" : "rk2";
}

Integrator integrator_from_string(const std::string& s) {
  if (s == "euler") return Integrator::Euler;
  if (s == "rk2" || s == "heun") return Integrator::RK2;
  throw ValidationError("unknown integrator '" + s + "'");
}

bool Forcing::is_zero() const {
  if (kind == "zero") return true;
  if (kind == "uniform") return vector == std::array{0.0, 0.0, 0.0};
  if (kind == "kolmogorov") return amplitude == 0.0;
  return false;
}

VectorField sample_initial(const GridSpec& g, const InitialCondition& ic) {
  const double amp = ic.amplitude;
  const double kx = kTwoPi / g.length[0];
  const double ky = kTwoPi / g.length[1];
  const double kz = kTwoPi / g.length[2];
  if (ic.kind == "rest") return VectorField(g);
  if (ic.kind == "taylor-green") {
    return VectorField::sample(g, [&](double x, double y, double) {
      return std::array{amp * std::sin(kx * x) * std::cos(ky * y),
                        -amp * (kx / ky) * std::cos(kx * x) * std::sin(ky * y), 0.0};
    });
  }
  if (ic.kind == "shear") {
    return VectorField::sample(g, [&](double, double, double z) {
      return std::array{amp * std::sin(kz * z), 2.0 * amp * std::cos(kz * z), 0.0};
    });
  }
  if (ic.kind == "separable") {
    return VectorField::sample(g, [&](double x, double y, double) {
      return std::array{amp * std::cos(ky * y), amp * std::sin(kx * x), 0.0};
    });
  }
  if (ic.kind == "random") {
    VectorField v = random_solenoidal_field(g, ic.seed);
    const double m = norm_linf(v);
    return m > 0.0 ? (amp / m) * v : v;
  }
  if (ic.kind == "box-vortex") {
    // curl of (0, 0, psi) with psi = sin^2(pi x/lx) sin^2(pi y/ly) sin^2(pi z/lz)
    const double ax = kPi / g.length[0];
    const double ay = kPi / g.length[1];
    const double az = kPi / g.length[2];
    return VectorField::sample(g, [&](double x, double y, double z) {
      const double sx = std::sin(ax * x), sy = std::sin(ay * y), sz = std::sin(az * z);
      const double dpsi_dx = 2.0 * ax * sx * std::cos(ax * x) * sy * sy * sz * sz;
      const double dpsi_dy = 2.0 * ay * sy * std::cos(ay * y) * sx * sx * sz * sz;
      return std::array{amp * dpsi_dy, -amp * dpsi_dx, 0.0};
    });
  }
  if (ic.kind == "file") {
    FieldRecord rec = load_field(ic.path);
    if (rec.components.size() != 3) throw ValidationError("initial data file must hold a vector field: " + ic.path);
    if (!(rec.grid == g)) throw GridMismatch("initial data file grid differs from scenario grid: " + ic.path);
    return amp * VectorField(rec.components[0], rec.components[1], rec.components[2]);
  }
  throw ValidationError("unknown initial condition '" + ic.kind + "'");
}

VectorField sample_forcing(const GridSpec& g, const Forcing& f) {
  if (f.kind == "zero") return VectorField(g);
  if (f.kind == "uniform") {
    return VectorField(ScalarField(g, f.vector[0]), ScalarField(g, f.vector[1]), ScalarField(g, f.vector[2]));
  }
  if (f.kind == "kolmogorov") {
    const double k = f.wavenumber * kTwoPi / g.length[1];
    return VectorField::sample(g, [&](double, double y, double) {
      return std::array{f.amplitude * std::sin(k * y), 0.0, 0.0};
    });
  }
  if (f.kind == "file") {
    FieldRecord rec = load_field(f.path);
    if (rec.components.size() != 3) throw ValidationError("forcing file must hold a vector field: " + f.path);
    if (!(rec.grid == g)) throw GridMismatch("forcing file grid differs from scenario grid: " + f.path);
    return VectorField(rec.components[0], rec.components[1], rec.components[2]);
  }
  throw ValidationError("unknown forcing '" + f.kind + "'");
}

double relative_divergence(const VectorField& v) {
  const double gn = gradient_norm(v);
  if (gn == 0.0) return 0.0;
  return norm_l2(divergence(v)) / gn;
}

double solenoidal_tolerance(const GridSpec& g) {
  if (g.bc == Boundary::Periodic) return 1e-8;
  double r = 0.0;
  for (int a = 0; a < 3; ++a) if (g.active(a)) r = std::max(r, g.spacing(a) / g.length[a]);
  return 10.0 * r * r;
}

double laplacian_spectral_radius(const GridSpec& g) {
  double lam = 0.0;
  for (int a = 0; a < 3; ++a) {
    if (!g.active(a)) continue;
    const double h = g.spacing(a);
    lam += (g.scheme == Scheme::Spectral && g.bc == Boundary::Periodic) ? (kPi / h) * (kPi / h) : 4.0 / (h * h);
  }
  return lam;
}

void check_cfl(const GridSpec& g, double viscosity, double dt, double max_speed) {
  const double adv = max_speed * dt / g.min_spacing();
  if (!(adv <= 0.5)) {
    throw CflViolation("advective CFL number " + fmt(adv) + " exceeds 0.5 (max|U| = " + fmt(max_speed) +
                       ", dt = " + fmt(dt) + ")");
  }
  const double diff = viscosity * dt * laplacian_spectral_radius(g);
  if (!(diff <= 1.0)) {
    throw CflViolation("diffusive number mu*dt*lambda_max = " + fmt(diff) + " exceeds 1 (dt = " + fmt(dt) + ")");
  }
}

Scenario instantiate(const ScenarioSpec& spec, const InstantiateOptions& opts) {
  spec.grid.validate();
  if (!(spec.viscosity > 0.0)) throw ValidationError("viscosity must be positive");
  if (!(spec.horizon >= 0.0)) throw ValidationError("horizon must be non-negative");
  if (!(spec.dt > 0.0)) throw ValidationError("time step must be positive", Assumption::TimeStep);

  Scenario s;
  s.spec = spec;
  const double nsteps = std::round(spec.horizon / spec.dt);
  if (std::abs(nsteps * spec.dt - spec.horizon) > 1e-9 * std::max(spec.horizon, spec.dt)) {
    throw ValidationError("time step " + fmt(spec.dt) + " does not divide horizon " + fmt(spec.horizon),
                          Assumption::TimeStep);
  }
  s.steps = static_cast<int>(nsteps);

  const GridSpec& g = spec.grid;
  const double tol = solenoidal_tolerance(g);

  s.force = sample_forcing(g, spec.forcing);
  if (!s.force.all_finite()) throw ValidationError("forcing is not finite", Assumption::SolenoidalForcing);
  const double fdiv = relative_divergence(s.force);
  if (fdiv > tol) {
    throw ValidationError("forcing is not solenoidal: relative divergence " + fmt(fdiv) + " > " + fmt(tol),
                          Assumption::SolenoidalForcing);
  }

  s.phi = sample_initial(g, spec.initial);
  if (!s.phi.all_finite()) throw ValidationError("initial data is not finite", Assumption::SolenoidalInitialData);
  if (g.bc == Boundary::NoSlipBox) {
    double wall = 0.0;
    for (int a = 0; a < 3; ++a) wall = std::max(wall, boundary_max_abs(s.phi[a]));
    if (wall > 1e-12 * std::max(1.0, s.phi.max_abs())) {
      if (!opts.auto_project) {
        throw ValidationError("initial data does not vanish on the walls: max " + fmt(wall),
                              Assumption::NoSlipInitialData);
      }
    }
    zero_boundary(s.phi);
  }
  const double pdiv = relative_divergence(s.phi);
  if (pdiv > tol) {
    if (!opts.auto_project) {
      throw ValidationError("initial data is not solenoidal: relative divergence " + fmt(pdiv) + " > " + fmt(tol),
                            Assumption::SolenoidalInitialData);
    }
    s.phi = project_solenoidal(s.phi);
    if (g.bc == Boundary::NoSlipBox) zero_boundary(s.phi);
  }

  check_cfl(g, spec.viscosity, spec.dt, s.phi.max_magnitude());
  return s;
}

std::vector<std::string> preset_names() {
  return {"taylor-green-2d", "shear-counterexample", "separable-2d", "random-2d",
          "box-vortex",      "uniform-forcing",      "kolmogorov-2d", "rest"};
}

ScenarioSpec preset(const std::string& name) {
  ScenarioSpec s;
  s.name = name;
  if (name == "taylor-green-2d") {
    s.grid = periodic_grid({64, 64, 1}, {kTwoPi, kTwoPi, 1.0});
    s.viscosity = 0.01;
    s.horizon = 1.0;
    s.dt = 1e-3;
    s.initial.kind = "taylor-green";
  } else if (name == "shear-counterexample") {
    s.grid = periodic_grid({1, 1, 256}, {kTwoPi, kTwoPi, kTwoPi});
    s.horizon = 0.0;
    s.initial.kind = "shear";
  } else if (name == "separable-2d") {
    s.grid = periodic_grid({64, 64, 1}, {kTwoPi, kTwoPi, 1.0});
    s.horizon = 0.0;
    s.initial.kind = "separable";
  } else if (name == "random-2d") {
    s.grid = periodic_grid({32, 32, 1}, {kTwoPi, kTwoPi, 1.0});
    s.viscosity = 0.05;
    s.horizon = 0.5;
    s.dt = 2e-3;
    s.initial.kind = "random";
    s.initial.seed = 1;
  } else if (name == "box-vortex") {
    s.grid = noslip_grid({17, 17, 17}, {1.0, 1.0, 1.0});
    s.viscosity = 0.05;
    s.horizon = 0.1;
    s.dt = 1e-3;
    s.initial.kind = "box-vortex";
  } else if (name == "uniform-forcing") {
    s.grid = periodic_grid({16, 16, 1}, {kTwoPi, kTwoPi, 1.0});
    s.horizon = 1.0;
    s.dt = 1e-2;
    s.forcing.kind = "uniform";
    s.forcing.vector = {1.0, 0.0, 0.0};
  } else if (name == "kolmogorov-2d") {
    s.grid = periodic_grid({32, 32, 1}, {kTwoPi, kTwoPi, 1.0});
    s.viscosity = 0.05;
    s.horizon = 2.0;
    s.dt = 5e-3;
    s.forcing.kind = "kolmogorov";
    s.forcing.amplitude = 0.1;
  } else if (name == "rest") {
    s.grid = periodic_grid({16, 16, 16}, {kTwoPi, kTwoPi, kTwoPi});
    s.horizon = 0.1;
    s.dt = 1e-2;
  } else {
    throw ValidationError("unknown preset '" + name + "'");
  }
  return s;
}

}  // namespace nsmp
