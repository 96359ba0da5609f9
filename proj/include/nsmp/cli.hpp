#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nsmp/diagnostics.hpp"
#include "nsmp/scenario.hpp"

namespace nsmp {

/// Check names accepted by --check, in report order.
const std::vector<std::string>& known_checks();
/// Expands "all", removes duplicates and orders by known_checks(). Throws
/// ValidationError on an unknown name.
std::vector<std::string> expand_checks(const std::vector<std::string>& names);

struct RunConfig {
  /// Scenario file or preset name.
  std::string scenario;
  std::vector<std::string> checks;
  std::filesystem::path out = "nsmp-out";
  std::vector<std::string> formats{"json", "csv"};
  int stride = 1;
  /// Seed of random initial data and of the stability noise.
  std::optional<std::uint64_t> seed;
  bool auto_project = false;
  /// Perturbation amplitude of the stability check.
  double delta = 1e-6;
  bool save_trajectory = true;
};

struct CheckCount {
  std::size_t pass = 0;
  std::size_t flag = 0;
};

struct RunSummary {
  std::string scenario;
  std::uint64_t seed = 0;
  int steps = 0;
  std::size_t stored_states = 0;
  std::map<std::string, CheckCount> checks;
  std::map<std::string, CheckCount> claims;
  std::vector<ClaimReport> reports;
};

/// Sets the random initial-data seed when the initial condition is random.
void apply_seed(ScenarioSpec& spec, std::uint64_t seed);
/// Sets the node count of every active direction.
void apply_resolution(ScenarioSpec& spec, int n);

/// Runs the scenario and the requested checks, writes trajectory and reports
/// to cfg.out. Throws on runtime errors.
RunSummary execute_run(const ScenarioSpec& spec, const RunConfig& cfg);
void write_summary(std::ostream& os, const RunSummary& s);

/// Returns 0 when the run and every check completed (FLAG findings included),
/// 1 on runtime or validation errors.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

struct SweepConfig {
  RunConfig base;
  /// Empty axes keep the base scenario's value.
  std::vector<double> viscosities;
  std::vector<int> resolutions;
  std::vector<double> time_steps;
  std::vector<std::uint64_t> seeds;
  /// 0 selects the hardware concurrency.
  int jobs = 0;
};

struct SweepRow {
  int cell = 0;
  double viscosity = 0.0;
  int resolution = 0;
  double dt = 0.0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::size_t pass = 0;
  std::size_t flag = 0;
  std::map<std::string, CheckCount> checks;
};

/// Runs every cell of the parameter grid concurrently; each cell writes to
/// out/cell_NNN. Rows come back in cell order; a failing cell becomes an
/// error row.
std::vector<SweepRow> execute_sweep(const SweepConfig& cfg);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, const std::vector<std::string>& checks);

/// Writes summary.csv and summary.json to cfg.base.out. Returns 1 when a cell
/// failed, 0 otherwise.
int sweep_command(const SweepConfig& cfg, std::ostream& out, std::ostream& err);

struct AnalyzeConfig {
  std::filesystem::path field;
  std::vector<std::string> checks;
  std::filesystem::path out = "nsmp-out";
  std::vector<std::string> formats{"json", "csv"};
};

/// Single-state diagnostics on a vector field file; the pressure is solved
/// from the velocity. Accepts the coincidence and pressure_identity checks.
int analyze_command(const AnalyzeConfig& cfg, std::ostream& out, std::ostream& err);

void list_presets(std::ostream& os);

}  // namespace nsmp
