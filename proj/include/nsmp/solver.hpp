#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <vector>

#include "nsmp/field.hpp"
#include "nsmp/scenario.hpp"

namespace nsmp {

struct FlowState {
  double time = 0.0;
  VectorField velocity;
  /// Mean-zero pressure.
  ScalarField pressure;
};

struct Trajectory {
  /// Null for trajectories read back from disk.
  std::shared_ptr<const Scenario> scenario;
  std::vector<FlowState> states;
  /// Solver steps between stored states.
  int stride = 1;
};

/// Advances one step of the projection method: tentative velocity from the
/// explicit viscous, convective and forcing terms, Leray projection, pressure
/// from the projection potential. RK2 is Heun's method with a projection after
/// each stage. Spectral grids dealias the convective term and the tentative
/// velocity; NoSlipBox grids clamp wall nodes to zero before and after each
/// projection.
///
/// Throws CflViolation when max|U| dt / h_min > 0.5 and BlowUp when the new
/// state is not finite.
FlowState step(const FlowState& state, const Scenario& scenario);

/// Called for every solver step, including the initial state (step 0).
using StepHook = std::function<void(const FlowState&, int step)>;

/// Integrates from the initial data to the horizon. Keeps every stride-th
/// state (stride must divide the step count). Errors carry the scenario name
/// and failing time.
Trajectory run(std::shared_ptr<const Scenario> scenario, const StepHook& hook = {}, int stride = 1);
Trajectory run(const Scenario& scenario, const StepHook& hook = {}, int stride = 1);

/// Mean-zero P with -Lap P = sum_ab dU_a/dx_b dU_b/dx_a, homogeneous Neumann
/// on NoSlipBox grids, periodic otherwise.
ScalarField pressure_from_velocity(const VectorField& u);

/// Pointwise residual of the kinetic-energy-density equation between stored
/// states k and k+1: (E1 - E0)/dt plus the average over both states of
/// -mu Lap E + mu sum_a |grad U_a|^2 + (grad E, U) + (grad P, U) - (f, U).
/// Throws std::out_of_range unless k and k+1 are stored states.
ScalarField energy_equation_residual(const Trajectory& traj, int k);

/// L2(Q) norm of the energy residual over the whole trajectory, time
/// integrated by the midpoint rule over stored intervals.
double energy_residual_norm(const Trajectory& traj);

/// Writes <stem>.bin (velocity then pressure record per state) and
/// <stem>.json (times and byte offsets).
void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj,
                      const std::string& stem = "trajectory");
Trajectory read_trajectory(const std::filesystem::path& dir, const std::string& stem = "trajectory");

}  // namespace nsmp
