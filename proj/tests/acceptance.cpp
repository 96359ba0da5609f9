// Acceptance suite: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "nsmp/cli.hpp"
#include "nsmp/diagnostics.hpp"
#include "nsmp/errors.hpp"
#include "nsmp/helmholtz.hpp"
#include "nsmp/operators.hpp"
#include "nsmp/poisson.hpp"
#include "nsmp/random_fields.hpp"
#include "nsmp/solver.hpp"

using namespace nsmp;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s (%.1f s) %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), seconds_since(t0),
              o.detail.c_str());
  std::fflush(stdout);
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("nsmp_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FlowState analysis_state(const VectorField& u) { return {0.0, u, pressure_from_velocity(u)}; }

/// Canonical Taylor-Green run, every step stored.
const Trajectory& taylor_green() {
  static const Trajectory tr = run(instantiate(preset("taylor-green-2d")));
  return tr;
}

Outcome neumann_poisson() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  const double lx = 2.0;
  double err[3];
  for (int r = 0; r < 3; ++r) {
    const GridSpec g = noslip_grid({32 << r, 5, 4}, {lx, 1.0, 0.5});
    const auto phi = ScalarField::sample(g, [&](double x, double, double) { return std::cos(kPi * x / lx); });
    const auto exact = ScalarField::sample(g, [&](double x, double, double) {
      return (lx / kPi) * (lx / kPi) * std::cos(kPi * x / lx);
    });
    const PoissonResult res = solve_poisson_neumann(phi);
    err[r] = norm_l2(res.solution - exact) / norm_l2(exact);
  }
  const double p1 = std::log2(err[0] / err[1]), p2 = std::log2(err[1] / err[2]);
  o.require(p1 >= 1.8 && p1 <= 2.2 && p2 >= 1.8 && p2 <= 2.2, "order outside [1.8, 2.2]");
  bool raised = false;
  try {
    solve_poisson_neumann(ScalarField(noslip_grid({16, 16, 16}, {1.0, 1.0, 1.0}), 1.0));
  } catch (const CompatibilityViolation&) {
    raised = true;
  }
  o.require(raised, "constant right-hand side accepted");
  const double t = seconds_since(t0);
  o.require(t < 10.0, "runtime over 10 s");
  o.detail = fmt("orders %.3f %.3f, incompatible rhs %s", p1, p2, raised ? "rejected" : "accepted") +
             (o.pass ? "" : " | " + o.detail);
  return o;
}

Outcome helmholtz() {
  Outcome o;
  const GridSpec g = periodic_grid({32, 32, 32}, {kTwoPi, kTwoPi, kTwoPi});
  double ortho = 0.0, recon = 0.0, pyth = 0.0, idem = 0.0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const VectorField w = random_smooth_vector(g, seed);
    const Decomposition d = leray_decompose(w);
    const double w2 = inner_l2(w, w);
    ortho = std::max(ortho, d.orthogonality_defect);
    recon = std::max(recon, norm_l2(d.gradient_part + d.solenoidal - w) / std::sqrt(w2));
    pyth = std::max(pyth,
                    std::abs(inner_l2(d.gradient_part, d.gradient_part) + inner_l2(d.solenoidal, d.solenoidal) - w2) / w2);
    idem = std::max(idem, norm_l2(project_solenoidal(d.solenoidal) - d.solenoidal) / norm_l2(d.solenoidal));
  }
  o.require(ortho <= 1e-10, "orthogonality");
  o.require(recon <= 1e-10, "reconstruction");
  o.require(pyth <= 1e-9, "Pythagoras");
  o.require(idem <= 1e-9, "idempotence");
  o.detail = fmt("orthogonality %.2e, reconstruction %.2e, Pythagoras %.2e, idempotence %.2e", ortho, recon, pyth,
                 idem) + (o.pass ? "" : " | " + o.detail);
  return o;
}

double taylor_green_final_error(double dt) {
  ScenarioSpec sp = preset("taylor-green-2d");
  sp.dt = dt;
  const Scenario s = instantiate(sp);
  const Trajectory tr = run(s, {}, s.steps);
  return norm_linf(tr.states.back().velocity - std::exp(-2 * sp.viscosity * sp.horizon) * s.phi);
}

Outcome taylor_green_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  const Trajectory& tr = taylor_green();
  const Scenario& s = *tr.scenario;
  const double mu = s.viscosity();
  double vel = 0.0, energy = 0.0;
  for (const FlowState& st : tr.states) {
    vel = std::max(vel, norm_linf(st.velocity - std::exp(-2 * mu * st.time) * s.phi));
    const double e = 0.5 * inner_l2(st.velocity, st.velocity);
    const double exact = kPi * kPi * std::exp(-4 * mu * st.time);
    energy = std::max(energy, std::abs(e - exact) / exact);
  }
  const double run_time = seconds_since(t0);
  const double e1 = taylor_green_final_error(4e-2), e2 = taylor_green_final_error(2e-2),
               e3 = taylor_green_final_error(1e-2);
  const double p1 = std::log2(e1 / e2), p2 = std::log2(e2 / e3);
  o.require(vel <= 1e-5, "velocity error");
  o.require(energy <= 1e-3, "energy");
  o.require(p1 >= 1.8 && p1 <= 2.2 && p2 >= 1.8 && p2 <= 2.2, "RK2 order outside [1.8, 2.2]");
  o.require(run_time < 60.0, "runtime over 60 s");
  o.detail = fmt("velocity error %.2e, energy rel error %.2e, orders %.3f %.3f, run %.1f s", vel, energy, p1, p2,
                 run_time) + (o.pass ? "" : " | " + o.detail);
  return o;
}

Outcome energy_equation() {
  Outcome o;
  double res[2], neg[2];
  for (int r = 0; r < 2; ++r) {
    ScenarioSpec sp = preset("taylor-green-2d");
    sp.grid.n = {16 << r, 16 << r, 1};
    sp.dt = 2e-2 / (1 << r);
    const auto s = std::make_shared<const Scenario>(instantiate(sp));
    res[r] = energy_residual_norm(run(s));
    // Wrong decay rate: not a solution.
    Trajectory control;
    control.scenario = s;
    for (int k = 0; k <= s->steps; ++k) {
      const VectorField u = std::exp(-sp.viscosity * k * sp.dt) * s->phi;
      control.states.push_back({k * sp.dt, u, pressure_from_velocity(u)});
    }
    neg[r] = energy_residual_norm(control);
  }
  const double ratio = res[0] / res[1], neg_ratio = neg[0] / neg[1];
  o.require(ratio >= 3.0, "residual reduction below 3");
  o.require(neg_ratio < 1.1, "negative control decreased");
  o.detail = fmt("residual %.3e -> %.3e (ratio %.2f), control %.3e -> %.3e (ratio %.3f)", res[0], res[1], ratio,
                 neg[0], neg[1], neg_ratio) + (o.pass ? "" : " | " + o.detail);
  return o;
}

Outcome identity_suite() {
  Outcome o;
  const Trajectory& tr = taylor_green();
  double worst = 0.0;
  for (std::size_t k = 0; k < tr.states.size(); k += 100) {
    const PressureIdentities r = pressure_identity_residual(tr.states[k]);
    worst = std::max({worst, r.convection, r.divergence, r.potential, r.pressure});
  }
  const GridSpec g = periodic_grid({32, 32, 32}, {kTwoPi, kTwoPi, kTwoPi});
  double min_margin = INFINITY;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const PressureIdentities r = pressure_identity_residual(analysis_state(random_solenoidal_field(g, seed)));
    min_margin = std::min(min_margin, (r.gradient_fourth - r.laplacian_sq) / r.gradient_fourth);
  }
  o.require(worst <= 1e-8, "identity residual");
  o.require(min_margin >= 0.0, "lg2 margin negative");
  o.detail = fmt("worst identity residual %.2e, min relative lg2 margin %.3f over 20 fields", worst, min_margin) +
             (o.pass ? "" : " | " + o.detail);
  return o;
}

SweepConfig random_sweep(const fs::path& out, std::vector<std::string> checks) {
  SweepConfig sc;
  sc.base.scenario = "random-2d";
  sc.base.checks = std::move(checks);
  sc.base.out = out;
  sc.base.stride = 5;
  sc.base.save_trajectory = false;
  sc.viscosities = {0.01, 0.1};
  sc.resolutions = {32, 64};
  sc.seeds = {1, 2};
  return sc;
}

Outcome apriori_sweep() {
  Outcome o;
  const fs::path out = scratch("apriori");
  const auto rows = execute_sweep(random_sweep(out, {"apriori"}));
  std::size_t ok = 0, records = 0;
  double worst = INFINITY;
  for (const SweepRow& row : rows) {
    if (!row.ok) {
      o.require(false, "cell " + std::to_string(row.cell) + ": " + row.error);
      continue;
    }
    ++ok;
    const auto rep = nlohmann::json::parse(slurp(out / fmt("cell_%03d", row.cell) / "apriori.json"));
    for (const auto& r : rep["records"]) {
      ++records;
      const double rhs = r["rhs"].get<double>(), margin = r["margin"].is_null() ? -INFINITY : r["margin"].get<double>();
      const double scaled = margin / std::max(std::abs(rhs), 1e-300);
      worst = std::min(worst, scaled);
      if (margin < -1e-9 * std::abs(rhs)) o.require(false, r["claim"].get<std::string>() + " margin");
    }
  }
  o.detail = fmt("%zu/%zu cells ran, %zu records, min margin/rhs %.3e", ok, rows.size(), records, worst) +
             (o.pass ? "" : " | " + o.detail);
  o.require(rows.size() == 8 && records > 0, "sweep incomplete");
  return o;
}

Outcome max_principle() {
  Outcome o;
  const Trajectory& tr = taylor_green();
  const ClaimReport rep = max_principle_report(tr);
  double worst = INFINITY;
  for (const auto& r : rep.records) worst = std::min(worst, r.margin);
  o.require(worst >= -1e-8, "Taylor-Green margin below -1e-8");

  Trajectory injected = tr;
  const std::size_t step = injected.states.size() / 2;
  injected.states[step].velocity *= std::sqrt(1.5);
  const ClaimReport bad = max_principle_report(injected);
  const ClaimRecord* flag = bad.first_flag("energy_max_principle");
  o.require(flag != nullptr, "injection not flagged");
  std::size_t flags = 0;
  for (const auto& r : bad.records)
    if (r.claim == "energy_max_principle" && r.verdict == Verdict::Flag) ++flags;
  if (flag) o.require(flag->time == injected.states[step].time && flags == 1, "flag at wrong step");
  o.detail = fmt("min Taylor-Green margin %.2e over %zu records, injection at step %zu flagged at t = %.3f (%zu flag)",
                 worst, rep.records.size(), step, flag ? flag->time : NAN, flags) +
             (o.pass ? "" : " | " + o.detail);
  return o;
}

Outcome coincidence() {
  Outcome o;
  double measured[2];
  bool separable_pass = true;
  for (int r = 0; r < 2; ++r) {
    const int n = 30 << r;
    const GridSpec g = periodic_grid({n, n, 1}, {kTwoPi, kTwoPi, 1.0});
    const auto u = VectorField::sample(g, [](double x, double y, double) { return std::array{std::cos(y), std::sin(x), 0.0}; });
    const FlowState st = analysis_state(u);
    const ClaimReport rep = extremum_coincidence(st, find_interior_maxima(kinetic_energy_density(u)));
    measured[r] = 0.0;
    for (const auto& rec : rep.records)
      if (rec.claim.starts_with("velocity_gradient_vanishes")) {
        measured[r] = std::max(measured[r], rec.lhs);
        separable_pass = separable_pass && rec.verdict == Verdict::Pass;
      }
    o.require(!rep.records.empty(), "no maxima on separable field");
    o.require(measured[r] <= 10.0 * g.spacing(0), "separable gradient above 10h");
  }
  o.require(separable_pass, "separable field flagged");
  o.require(measured[1] <= 0.5 * measured[0], "separable gradient not halving");

  const Scenario s = instantiate(preset("shear-counterexample"));
  const ClaimReport rep = extremum_coincidence(analysis_state(s.phi), find_interior_maxima(kinetic_energy_density(s.phi)));
  const ClaimRecord* flag = rep.first_flag("velocity_gradient_vanishes[1]");
  o.require(flag != nullptr, "shear field not flagged");
  const int nz = s.grid().n[2];
  if (flag) {
    o.require(std::abs(flag->lhs - 1.0) <= 0.05, "shear gradient not 1 +- 0.05");
    o.require(flag->location && ((*flag->location)[2] == 0 || (*flag->location)[2] == nz / 2), "flag off the maximum plane");
  }
  double cos_z = INFINITY;
  for (const auto& ob : rep.observations)
    if (ob.name == "cos_gamma[3]") cos_z = std::min(cos_z, std::abs(ob.value));
  o.require(cos_z <= 1e-12, "cos gamma_z not reported as 0");
  o.detail = fmt("separable max|grad U| %.2e -> %.2e, shear |dU1/dz| = %.4f, |cos gamma_z| = %.1e", measured[0],
                 measured[1], flag ? flag->lhs : NAN, cos_z) + (o.pass ? "" : " | " + o.detail);
  return o;
}

Outcome stability() {
  Outcome o;
  ScenarioSpec sp = preset("taylor-green-2d");
  sp.grid.n = {32, 32, 1};
  sp.viscosity = 0.1;
  const Scenario s = instantiate(sp);
  const ClaimReport rep = stability_report(s, 1e-6, 3);
  double worst = INFINITY;
  for (const auto& r : rep.records) worst = std::min(worst, r.margin);
  o.require(rep.records.size() == static_cast<std::size_t>(s.steps) + 1, "not every step checked");
  o.require(worst >= 0.0, "negative margin");
  o.detail = fmt("%zu steps checked, min margin %.3e", rep.records.size(), worst) + (o.pass ? "" : " | " + o.detail);
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::string> checks = {"max_principle", "apriori", "stability", "energy_residual"};
  SweepConfig a = random_sweep(scratch("det_a"), checks), b = random_sweep(scratch("det_b"), checks);
  a.viscosities = b.viscosities = {0.05};
  a.resolutions = b.resolutions = {32};
  a.base.stride = b.base.stride = 25;
  a.jobs = 1;
  b.jobs = 2;
  std::ostringstream sink;
  sweep_command(a, sink, sink);
  sweep_command(b, sink, sink);
  std::size_t compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(a.base.out)) {
    if (entry.path().extension() != ".csv") continue;
    const fs::path rel = fs::relative(entry.path(), a.base.out);
    ++compared;
    o.require(slurp(entry.path()) == slurp(b.base.out / rel), rel.string() + " differs");
  }
  o.require(compared > 1, "no CSV reports");
  o.detail = fmt("%zu CSV files identical across two sweeps", compared) + (o.pass ? "" : " | " + o.detail);
  return o;
}

}  // namespace

int main() {
  criterion(1, "neumann_poisson_manufactured_solution", neumann_poisson);
  criterion(2, "helmholtz_projection_random_fields", helmholtz);
  criterion(3, "taylor_green_solver_oracle", taylor_green_oracle);
  criterion(4, "energy_equation_residual_convergence", energy_equation);
  criterion(5, "pressure_identities_and_laplacian_bound", identity_suite);
  criterion(6, "apriori_bounds_across_sweep", apriori_sweep);
  criterion(7, "max_principle_monitor_calibration", max_principle);
  criterion(8, "extremum_coincidence_calibration", coincidence);
  criterion(9, "stability_bound_twin_runs", stability);
  criterion(10, "sweep_determinism", determinism);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
