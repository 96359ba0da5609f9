#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "nsmp/field.hpp"

namespace nsmp {

enum class Integrator { Euler, RK2 };

std::string to_string(Integrator integrator);
Integrator integrator_from_string(const std::string& s);

/// Named analytic initial velocity, or a field file.
///
/// Kinds: rest, taylor-green, shear, separable, random, box-vortex, file.
struct InitialCondition {
  std::string kind = "rest";
  double amplitude = 1.0;
  std::uint64_t seed = 0;
  std::string path;

  bool operator==(const InitialCondition&) const = default;
};

/// Time-independent body force. Kinds: zero, uniform (constant vector),
/// kolmogorov (amplitude * sin(wavenumber * 2 pi y / ly) along x), file.
struct Forcing {
  std::string kind = "zero";
  double amplitude = 0.0;
  std::array<double, 3> vector{0.0, 0.0, 0.0};
  int wavenumber = 1;
  std::string path;

  bool is_zero() const;
  bool operator==(const Forcing&) const = default;
};

/// Everything needed to rebuild a scenario; no sampled data.
struct ScenarioSpec {
  std::string name = "scenario";
  GridSpec grid;
  double viscosity = 0.01;
  double horizon = 1.0;
  double dt = 1e-3;
  Integrator integrator = Integrator::RK2;
  InitialCondition initial;
  Forcing forcing;

  bool operator==(const ScenarioSpec&) const = default;
};

struct InstantiateOptions {
  /// Replace non-solenoidal initial data by its Leray projection instead of
  /// rejecting it.
  bool auto_project = false;
};

/// A validated scenario with its sampled initial data and forcing.
struct Scenario {
  ScenarioSpec spec;
  VectorField phi;
  VectorField force;
  int steps = 0;

  const GridSpec& grid() const { return spec.grid; }
  double viscosity() const { return spec.viscosity; }
  double horizon() const { return spec.horizon; }
  double dt() const { return spec.dt; }
};

/// Samples the initial data and forcing and checks the scenario. Throws
/// ValidationError naming the violated assumption: non-solenoidal forcing,
/// non-solenoidal initial data, initial data not vanishing on the walls, or a
/// time step that does not divide the horizon. Throws CflViolation when dt
/// exceeds the advective or diffusive limit.
Scenario instantiate(const ScenarioSpec& spec, const InstantiateOptions& opts = {});

VectorField sample_initial(const GridSpec& grid, const InitialCondition& ic);
VectorField sample_forcing(const GridSpec& grid, const Forcing& f);

/// ||div v||_2 / ||grad v||_2, 0 for a constant field.
double relative_divergence(const VectorField& v);
/// Admissible relative_divergence for data on this grid: 1e-8 on periodic
/// grids, where the projector is exact, and O(h^2) on NoSlipBox grids.
double solenoidal_tolerance(const GridSpec& grid);

/// Largest eigenvalue of -Lap on the grid.
double laplacian_spectral_radius(const GridSpec& grid);
/// Throws CflViolation unless max|u| dt / h_min <= 0.5 and
/// mu dt lambda_max <= 1, i.e. half the real-axis stability interval of the
/// explicit integrators.
void check_cfl(const GridSpec& grid, double viscosity, double dt, double max_speed);

std::vector<std::string> preset_names();
/// Throws ValidationError for an unknown name.
ScenarioSpec preset(const std::string& name);

}  // namespace nsmp
