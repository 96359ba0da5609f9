#include "nsmp/solver.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "nsmp/errors.hpp"
#include "nsmp/field_io.hpp"
#include "nsmp/helmholtz.hpp"
#include "nsmp/operators.hpp"
#include "nsmp/poisson.hpp"

namespace nsmp {

namespace {

std::string at_time(double t) {
  std::ostringstream os;
  os.precision(10);
  os << " at t = " << t;
  return os.str();
}

bool spectral(const GridSpec& g) {
  return g.scheme == Scheme::Spectral && g.bc == Boundary::Periodic;
}

/// mu Lap U - (U.grad)U + f
VectorField tendency(const VectorField& u, const Scenario& s) {
  VectorField conv = convection(u);
  if (spectral(s.grid())) conv = dealias(conv);
  return s.viscosity() * laplacian(u) - conv + s.force;
}

struct Projected {
  VectorField velocity;
  ScalarField potential;
};

Projected project(VectorField w, const GridSpec& g) {
  if (spectral(g)) w = dealias(w);
  if (g.bc == Boundary::NoSlipBox) zero_boundary(w);
  Decomposition d = leray_decompose(w);
  if (g.bc == Boundary::NoSlipBox) zero_boundary(d.solenoidal);
  return {std::move(d.solenoidal), std::move(d.potential)};
}

template <class E>
[[noreturn]] void rethrow_with_context(const E& e, const std::string& prefix) {
  throw E(prefix + e.what());
}

}  // namespace

FlowState step(const FlowState& state, const Scenario& s) {
  const GridSpec& g = s.grid();
  const double dt = s.dt();
  if (!state.velocity.all_finite()) throw BlowUp("non-finite velocity" + at_time(state.time));
  const double speed = state.velocity.max_magnitude();
  const double cfl = speed * dt / g.min_spacing();
  if (!(cfl <= 0.5)) {
    std::ostringstream os;
    os << "advective CFL number " << cfl << " exceeds 0.5" << at_time(state.time);
    throw CflViolation(os.str());
  }

  FlowState next;
  next.time = state.time + dt;
  const VectorField& u = state.velocity;
  if (s.spec.integrator == Integrator::Euler) {
    Projected p = project(u + dt * tendency(u, s), g);
    next.velocity = std::move(p.velocity);
    next.pressure = (1.0 / dt) * p.potential;
  } else {
    const Projected p1 = project(u + dt * tendency(u, s), g);
    const VectorField& u1 = p1.velocity;
    Projected p2 = project(0.5 * (u + u1 + dt * tendency(u1, s)), g);
    next.velocity = std::move(p2.velocity);
    next.pressure = (2.0 / dt) * p2.potential;
  }
  if (!next.velocity.all_finite() || !next.pressure.all_finite()) {
    throw BlowUp("non-finite velocity or pressure" + at_time(next.time));
  }
  return next;
}

ScalarField pressure_from_velocity(const VectorField& u) {
  PoissonOptions opts;
  if (u.grid().bc == Boundary::NoSlipBox) opts.compat_tol = kNoCompatCheck;
  ScalarField rhs = gradient_contraction(u);
  if (u.grid().bc == Boundary::Periodic) {
    // The contraction of a discretely solenoidal field has zero mean up to
    // roundoff; drop it so the compatibility check sees only real defects.
    const double m = mean(rhs);
    if (std::abs(m) <= 1e-12 * (norm_linf(rhs) + 1e-300)) rhs -= ScalarField(u.grid(), m);
  }
  return solve_poisson(rhs, opts).solution;
}

Trajectory run(std::shared_ptr<const Scenario> scenario, const StepHook& hook, int stride) {
  const Scenario& s = *scenario;
  if (stride < 1 || (s.steps > 0 && s.steps % stride != 0)) {
    throw ValidationError("stride " + std::to_string(stride) + " must divide the step count " +
                          std::to_string(s.steps));
  }
  Trajectory traj;
  traj.scenario = scenario;
  traj.stride = stride;

  const std::string prefix = s.spec.name + ": ";
  FlowState state{0.0, s.phi, ScalarField(s.grid())};
  try {
    state.pressure = pressure_from_velocity(s.phi);
  } catch (const CompatibilityViolation& e) {
    throw CompatibilityViolation(prefix + e.what() + at_time(0.0), e.defect());
  }
  if (hook) hook(state, 0);
  traj.states.push_back(state);

  for (int n = 1; n <= s.steps; ++n) {
    try {
      state = step(state, s);
    } catch (const CflViolation& e) {
      rethrow_with_context(e, prefix);
    } catch (const BlowUp& e) {
      rethrow_with_context(e, prefix);
    } catch (const BoundaryFluxViolation& e) {
      throw BoundaryFluxViolation(prefix + e.what() + at_time(state.time));
    } catch (const CompatibilityViolation& e) {
      throw CompatibilityViolation(prefix + e.what() + at_time(state.time), e.defect());
    }
    state.time = n * s.dt();
    if (hook) hook(state, n);
    if (n % stride == 0) traj.states.push_back(state);
  }
  return traj;
}

Trajectory run(const Scenario& scenario, const StepHook& hook, int stride) {
  return run(std::make_shared<const Scenario>(scenario), hook, stride);
}

namespace {

ScalarField energy_operator(const FlowState& st, double mu, const VectorField& f) {
  const VectorField& u = st.velocity;
  const ScalarField e = kinetic_energy_density(u);
  ScalarField out = -mu * laplacian(e);
  for (int a = 0; a < 3; ++a) {
    const VectorField g = gradient(u[a]);
    out += mu * dot(g, g);
  }
  out += dot(gradient(e), u);
  out += dot(gradient(st.pressure), u);
  out -= dot(f, u);
  return out;
}

}  // namespace

ScalarField energy_equation_residual(const Trajectory& traj, int k) {
  if (k < 0 || k + 1 >= static_cast<int>(traj.states.size())) {
    throw std::out_of_range("energy residual needs stored states " + std::to_string(k) + " and " +
                            std::to_string(k + 1));
  }
  if (!traj.scenario) throw Error("energy residual needs the scenario (viscosity and forcing)");
  const Scenario& s = *traj.scenario;
  const FlowState& a = traj.states[k];
  const FlowState& b = traj.states[k + 1];
  const double dt = b.time - a.time;
  ScalarField r = (1.0 / dt) * (kinetic_energy_density(b.velocity) - kinetic_energy_density(a.velocity));
  r += 0.5 * (energy_operator(a, s.viscosity(), s.force) + energy_operator(b, s.viscosity(), s.force));
  return r;
}

double energy_residual_norm(const Trajectory& traj) {
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < traj.states.size(); ++k) {
    const double dt = traj.states[k + 1].time - traj.states[k].time;
    const ScalarField r = energy_equation_residual(traj, static_cast<int>(k));
    acc += dt * inner_l2(r, r);
  }
  return std::sqrt(acc);
}

void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj, const std::string& stem) {
  std::filesystem::create_directories(dir);
  const auto bin = dir / (stem + ".bin");
  std::ofstream os(bin, std::ios::binary);
  if (!os) throw Error("cannot open " + bin.string());
  nlohmann::json index;
  index["binary"] = stem + ".bin";
  index["stride"] = traj.stride;
  if (traj.scenario) {
    index["scenario"] = traj.scenario->spec.name;
    index["dt"] = traj.scenario->dt();
  }
  nlohmann::json states = nlohmann::json::array();
  for (const FlowState& st : traj.states) {
    const auto vel = static_cast<std::uint64_t>(os.tellp());
    write_field(os, st.velocity);
    const auto pre = static_cast<std::uint64_t>(os.tellp());
    write_field(os, st.pressure);
    states.push_back({{"time", st.time}, {"velocity_offset", vel}, {"pressure_offset", pre}});
  }
  index["states"] = std::move(states);
  if (!os) throw Error("write failed: " + bin.string());
  std::ofstream js(dir / (stem + ".json"));
  js << index.dump(2) << '\n';
  if (!js) throw Error("write failed: " + (dir / (stem + ".json")).string());
}

Trajectory read_trajectory(const std::filesystem::path& dir, const std::string& stem) {
  std::ifstream js(dir / (stem + ".json"));
  if (!js) throw Error("cannot open " + (dir / (stem + ".json")).string());
  nlohmann::json index;
  try {
    index = nlohmann::json::parse(js);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad trajectory index: ") + e.what());
  }
  std::ifstream bin(dir / index.at("binary").get<std::string>(), std::ios::binary);
  if (!bin) throw Error("cannot open trajectory binary in " + dir.string());
  Trajectory traj;
  traj.stride = index.value("stride", 1);
  for (const auto& e : index.at("states")) {
    FlowState st;
    st.time = e.at("time").get<double>();
    bin.seekg(static_cast<std::streamoff>(e.at("velocity_offset").get<std::uint64_t>()));
    st.velocity = read_vector_field(bin);
    bin.seekg(static_cast<std::streamoff>(e.at("pressure_offset").get<std::uint64_t>()));
    st.pressure = read_scalar_field(bin);
    traj.states.push_back(std::move(st));
  }
  return traj;
}

}  // namespace nsmp
