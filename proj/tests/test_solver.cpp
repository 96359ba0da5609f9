#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "nsmp/errors.hpp"
#include "nsmp/field_io.hpp"
#include "nsmp/operators.hpp"
#include "nsmp/solver.hpp"

using namespace nsmp;

namespace {

constexpr double kPi = std::numbers::pi;

ScalarField taylor_green_pressure(const GridSpec& g, double decay) {
  return ScalarField::sample(g, [&](double x, double y, double) {
    return 0.25 * (std::cos(2 * x) + std::cos(2 * y)) * decay;
  });
}

double taylor_green_error(double dt, Integrator integrator = Integrator::RK2) {
  ScenarioSpec sp = preset("taylor-green-2d");
  sp.dt = dt;
  sp.integrator = integrator;
  const Scenario s = instantiate(sp);
  const Trajectory tr = run(s);
  return norm_linf(tr.states.back().velocity - std::exp(-2 * sp.viscosity * sp.horizon) * s.phi);
}

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("nsmp_test_solver_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST(Presets, AllInstantiate) {
  for (const auto& name : preset_names()) {
    EXPECT_NO_THROW(instantiate(preset(name))) << name;
  }
  EXPECT_THROW(preset("no-such-preset"), ValidationError);
  const ScenarioSpec tg = preset("taylor-green-2d");
  EXPECT_EQ(tg.grid.n, (std::array{64, 64, 1}));
  EXPECT_EQ(tg.viscosity, 0.01);
  EXPECT_EQ(tg.horizon, 1.0);
  EXPECT_EQ(tg.dt, 1e-3);
  EXPECT_EQ(instantiate(tg).steps, 1000);
}

TEST(Step, RestStateStaysAtRest) {
  const Scenario s = instantiate(preset("rest"));
  const Trajectory tr = run(s);
  ASSERT_EQ(tr.states.size(), 11u);
  for (const FlowState& st : tr.states) {
    EXPECT_EQ(st.velocity.max_abs(), 0.0);
    EXPECT_EQ(st.pressure.max_abs(), 0.0);
  }
}

TEST(Step, TaylorGreenMatchesAnalyticSolution) {
  const ScenarioSpec sp = preset("taylor-green-2d");
  const Scenario s = instantiate(sp);
  const double mu = sp.viscosity;
  double worst_div = 0.0, worst_mean = 0.0;
  const Trajectory tr = run(
      s,
      [&](const FlowState& st, int) {
        worst_div = std::max(worst_div, norm_l2(divergence(st.velocity)) / norm_l2(st.velocity));
        worst_mean = std::max(worst_mean, std::abs(mean(st.pressure)));
      },
      100);
  ASSERT_EQ(tr.states.size(), 11u);
  EXPECT_LE(worst_div, 1e-9);
  EXPECT_LE(worst_mean, 1e-12);
  for (const FlowState& st : tr.states) {
    const double decay = std::exp(-2 * mu * st.time);
    EXPECT_LE(norm_linf(st.velocity - decay * s.phi), 1e-5);
    EXPECT_LE(norm_linf(st.pressure - taylor_green_pressure(s.grid(), decay * decay)), 1e-8);
    const double energy = mean(kinetic_energy_density(st.velocity)) * s.grid().volume();
    EXPECT_NEAR(energy / (kPi * kPi * decay * decay), 1.0, 1e-3);
  }
}

TEST(Step, SecondOrderInTime) {
  const double e1 = taylor_green_error(4e-2), e2 = taylor_green_error(2e-2), e3 = taylor_green_error(1e-2);
  for (double p : {std::log2(e1 / e2), std::log2(e2 / e3)}) {
    EXPECT_GE(p, 1.8);
    EXPECT_LE(p, 2.2);
  }
  const double p_euler = std::log2(taylor_green_error(4e-2, Integrator::Euler) / taylor_green_error(2e-2, Integrator::Euler));
  EXPECT_NEAR(p_euler, 1.0, 0.2);
}

TEST(Step, UniformForcingGivesLinearGrowth) {
  const Scenario s = instantiate(preset("uniform-forcing"));
  const Trajectory tr = run(s);
  for (const FlowState& st : tr.states) {
    const VectorField exact(ScalarField(s.grid(), st.time), ScalarField(s.grid()), ScalarField(s.grid()));
    EXPECT_LE(norm_linf(st.velocity - exact), 1e-12);
  }
}

TEST(Step, ZeroHorizonKeepsInitialState) {
  const Scenario s = instantiate(preset("shear-counterexample"));
  const Trajectory tr = run(s);
  ASSERT_EQ(tr.states.size(), 1u);
  EXPECT_EQ(tr.states[0].time, 0.0);
  EXPECT_EQ(norm_linf(tr.states[0].velocity - s.phi), 0.0);
}

TEST(Step, UnforcedEnergyDecaysAndBalances) {
  ScenarioSpec sp = preset("random-2d");
  const Scenario s = instantiate(sp);
  const Trajectory tr = run(s);
  double prev = std::numeric_limits<double>::infinity();
  double worst_balance = 0.0;
  for (std::size_t k = 0; k < tr.states.size(); ++k) {
    const double e = mean(kinetic_energy_density(tr.states[k].velocity)) * s.grid().volume();
    EXPECT_LE(e, prev);
    prev = e;
    if (k + 1 < tr.states.size()) {
      const auto& a = tr.states[k];
      const auto& b = tr.states[k + 1];
      const double de = (mean(kinetic_energy_density(b.velocity)) - mean(kinetic_energy_density(a.velocity))) *
                        s.grid().volume() / (b.time - a.time);
      double dissipation = 0.0;
      for (int c = 0; c < 3; ++c) {
        const VectorField ga = gradient(a.velocity[c]), gb = gradient(b.velocity[c]);
        dissipation += 0.5 * sp.viscosity * (inner_l2(ga, ga) + inner_l2(gb, gb));
      }
      worst_balance = std::max(worst_balance, std::abs(de + dissipation) / dissipation);
    }
  }
  EXPECT_LE(worst_balance, 1e-3);
}

TEST(Step, NoSlipBoxVortexStaysOnWallsAndDecays) {
  const Scenario s = instantiate(preset("box-vortex"));
  const Trajectory tr = run(s);
  double prev = std::numeric_limits<double>::infinity();
  for (const FlowState& st : tr.states) {
    for (int a = 0; a < 3; ++a) EXPECT_EQ(boundary_max_abs(st.velocity[a]), 0.0);
    EXPECT_LE(relative_divergence(st.velocity), solenoidal_tolerance(s.grid()));
    EXPECT_NEAR(mean(st.pressure), 0.0, 1e-12);
    const double e = norm_l2(st.velocity);
    EXPECT_LT(e, prev);
    prev = e;
  }
}

TEST(Step, RaisesCflViolationAndBlowUp) {
  const Scenario s = instantiate(preset("taylor-green-2d"));
  FlowState fast{0.0, 1e3 * s.phi, ScalarField(s.grid())};
  EXPECT_THROW(step(fast, s), CflViolation);
  FlowState bad{0.0, s.phi, ScalarField(s.grid())};
  bad.velocity[0][5] = std::nan("");
  EXPECT_THROW(step(bad, s), BlowUp);
}

TEST(Run, ErrorsCarryScenarioNameAndTime) {
  ScenarioSpec sp = preset("uniform-forcing");
  sp.forcing.vector = {100.0, 0.0, 0.0};
  sp.dt = 1e-2;
  sp.horizon = 1.0;
  try {
    run(instantiate(sp));
    FAIL() << "expected CflViolation";
  } catch (const CflViolation& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("uniform-forcing"), std::string::npos) << msg;
    EXPECT_NE(msg.find("at t = "), std::string::npos) << msg;
  }
}

TEST(Run, StrideAndHook) {
  const Scenario s = instantiate(preset("rest"));
  int calls = 0;
  const Trajectory tr = run(s, [&](const FlowState&, int) { ++calls; }, 5);
  EXPECT_EQ(calls, 11);
  ASSERT_EQ(tr.states.size(), 3u);
  EXPECT_DOUBLE_EQ(tr.states[1].time, 0.05);
  EXPECT_THROW(run(s, {}, 3), ValidationError);
}

TEST(Validation, RejectsNonSolenoidalInitialDataUnlessProjected) {
  const auto dir = temp_dir("validation");
  ScenarioSpec sp = preset("random-2d");
  const auto w = VectorField::sample(sp.grid, [](double x, double y, double) {
    return std::array{std::sin(x) + std::cos(y), std::sin(y), 0.0};
  });
  save_field(dir / "phi.nsf", w);
  sp.initial = {"file", 1.0, 0, (dir / "phi.nsf").string()};
  try {
    instantiate(sp);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.violated(), Assumption::SolenoidalInitialData);
  }
  const Scenario s = instantiate(sp, {.auto_project = true});
  EXPECT_LE(relative_divergence(s.phi), 1e-12);
}

TEST(Validation, RejectsNonSolenoidalForcing) {
  const auto dir = temp_dir("forcing");
  ScenarioSpec sp = preset("rest");
  save_field(dir / "f.nsf", VectorField::sample(sp.grid, [](double x, double, double) {
               return std::array{std::sin(x), 0.0, 0.0};
             }));
  sp.forcing.kind = "file";
  sp.forcing.path = (dir / "f.nsf").string();
  try {
    instantiate(sp);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.violated(), Assumption::SolenoidalForcing);
  }
}

TEST(Validation, RejectsWallVelocityOnNoSlipBox) {
  const auto dir = temp_dir("wall");
  ScenarioSpec sp = preset("box-vortex");
  const VectorField u(ScalarField(sp.grid, 1.0), ScalarField(sp.grid), ScalarField(sp.grid));
  save_field(dir / "u.nsf", u);
  sp.initial = {"file", 1.0, 0, (dir / "u.nsf").string()};
  try {
    instantiate(sp);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.violated(), Assumption::NoSlipInitialData);
  }
}

TEST(Validation, TimeStepChecks) {
  ScenarioSpec sp = preset("taylor-green-2d");
  sp.dt = 0.25;
  EXPECT_THROW(instantiate(sp), CflViolation);
  sp = preset("taylor-green-2d");
  sp.viscosity = 10.0;
  EXPECT_THROW(instantiate(sp), CflViolation);
  sp = preset("taylor-green-2d");
  sp.dt = 0.3e-3;
  try {
    instantiate(sp);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.violated(), Assumption::TimeStep);
  }
}

TEST(PressureFromVelocity, Examples) {
  const GridSpec g = periodic_grid({32, 32, 1}, {2 * kPi, 2 * kPi, 1.0});
  const VectorField c(ScalarField(g, 1.0), ScalarField(g, -2.0), ScalarField(g, 0.5));
  EXPECT_EQ(pressure_from_velocity(c).max_abs(), 0.0);

  const ScenarioSpec sp = preset("taylor-green-2d");
  const VectorField tg = 0.7 * sample_initial(sp.grid, sp.initial);
  EXPECT_LE(norm_linf(pressure_from_velocity(tg) - taylor_green_pressure(sp.grid, 0.49)), 1e-8);

  const Scenario shear = instantiate(preset("shear-counterexample"));
  EXPECT_LE(gradient_contraction(shear.phi).max_abs(), 1e-12);
  EXPECT_LE(pressure_from_velocity(shear.phi).max_abs(), 1e-12);
}

TEST(EnergyResidual, RestStateIsZero) {
  const Trajectory tr = run(instantiate(preset("rest")));
  EXPECT_EQ(energy_equation_residual(tr, 0).max_abs(), 0.0);
  EXPECT_THROW(energy_equation_residual(tr, 10), std::out_of_range);
  EXPECT_THROW(energy_equation_residual(tr, -1), std::out_of_range);
}

TEST(EnergyResidual, ConsistentForSolutionsOnly) {
  double prev = 0.0, prev_neg = 0.0;
  for (int r = 0; r < 2; ++r) {
    ScenarioSpec sp = preset("taylor-green-2d");
    sp.grid.n = {16 << r, 16 << r, 1};
    sp.dt = 2e-2 / (1 << r);
    const auto s = std::make_shared<const Scenario>(instantiate(sp));
    const double res = energy_residual_norm(run(s));
    Trajectory frozen;
    frozen.scenario = s;
    for (int k = 0; k <= s->steps; ++k) {
      FlowState st{k * sp.dt, std::exp(-sp.viscosity * k * sp.dt) * s->phi, ScalarField(s->grid())};
      st.pressure = pressure_from_velocity(st.velocity);
      frozen.states.push_back(st);
    }
    const double neg = energy_residual_norm(frozen);
    if (r == 1) {
      EXPECT_GE(prev / res, 3.0);
      EXPECT_LT(prev_neg / neg, 1.1);
      EXPECT_GT(neg, 1e-2);
    }
    prev = res;
    prev_neg = neg;
  }
}

TEST(TrajectoryIo, RoundTripIsExact) {
  const auto dir = temp_dir("io");
  const Trajectory tr = run(instantiate(preset("random-2d")), {}, 50);
  write_trajectory(dir, tr);
  EXPECT_TRUE(std::filesystem::exists(dir / "trajectory.json"));
  const Trajectory back = read_trajectory(dir);
  ASSERT_EQ(back.states.size(), tr.states.size());
  EXPECT_EQ(back.stride, 50);
  for (std::size_t k = 0; k < tr.states.size(); ++k) {
    EXPECT_EQ(back.states[k].time, tr.states[k].time);
    EXPECT_EQ(norm_linf(back.states[k].velocity - tr.states[k].velocity), 0.0);
    EXPECT_EQ((back.states[k].pressure - tr.states[k].pressure).max_abs(), 0.0);
  }
  EXPECT_THROW(read_trajectory(dir / "missing"), Error);
}
