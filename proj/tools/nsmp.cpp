#include <iostream>

#include <CLI11.hpp>

#include "nsmp/cli.hpp"
#include "nsmp/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Navier-Stokes claim monitor: solver runs, diagnostics and parameter sweeps"};
  app.require_subcommand(1);

  nsmp::RunConfig run_cfg;
  std::uint64_t seed = 0;
  auto* run = app.add_subcommand("run", "run a scenario and the selected checks");
  run->add_option("scenario", run_cfg.scenario, "scenario file or preset name")->required();
  run->add_option("--check", run_cfg.checks, "checks: max_principle coincidence pressure_identity apriori stability "
                                             "energy_residual all")
      ->delimiter(',');
  run->add_option("--out", run_cfg.out, "output directory")->capture_default_str();
  run->add_option("--format", run_cfg.formats, "report formats: json csv")->delimiter(',')->capture_default_str();
  run->add_option("--stride", run_cfg.stride, "store every n-th step")->capture_default_str()->check(CLI::PositiveNumber);
  auto* seed_opt = run->add_option("--seed", seed, "seed of random initial data and stability noise");
  run->add_flag("--auto-project", run_cfg.auto_project, "project non-solenoidal initial data instead of rejecting it");
  run->add_option("--delta", run_cfg.delta, "stability perturbation amplitude")->capture_default_str();
  run->add_flag("!--no-trajectory", run_cfg.save_trajectory, "do not write the trajectory files");

  nsmp::SweepConfig sweep_cfg;
  auto* sweep = app.add_subcommand("sweep", "run a scenario over a parameter grid");
  sweep->add_option("scenario", sweep_cfg.base.scenario, "scenario file or preset name")->required();
  sweep->add_option("--check", sweep_cfg.base.checks, "checks per cell")->delimiter(',');
  sweep->add_option("--out", sweep_cfg.base.out, "output directory")->capture_default_str();
  sweep->add_option("--format", sweep_cfg.base.formats, "report formats")->delimiter(',')->capture_default_str();
  sweep->add_option("--stride", sweep_cfg.base.stride, "store every n-th step")->check(CLI::PositiveNumber);
  sweep->add_option("--mu", sweep_cfg.viscosities, "viscosities")->delimiter(',');
  sweep->add_option("--n", sweep_cfg.resolutions, "node counts per active direction")->delimiter(',');
  sweep->add_option("--dt", sweep_cfg.time_steps, "time steps")->delimiter(',');
  sweep->add_option("--seeds", sweep_cfg.seeds, "seeds")->delimiter(',');
  sweep->add_option("--jobs", sweep_cfg.jobs, "concurrent cells (0: all cores)");
  sweep->add_flag("--auto-project", sweep_cfg.base.auto_project, "project non-solenoidal initial data");
  sweep->add_flag("--save-trajectory", sweep_cfg.base.save_trajectory, "write per-cell trajectories");

  nsmp::AnalyzeConfig analyze_cfg;
  auto* analyze = app.add_subcommand("analyze", "single-state diagnostics on a vector field file");
  analyze->add_option("field", analyze_cfg.field, "vector field file")->required()->check(CLI::ExistingFile);
  analyze->add_option("--check", analyze_cfg.checks, "coincidence pressure_identity all")->delimiter(',');
  analyze->add_option("--out", analyze_cfg.out, "output directory")->capture_default_str();
  analyze->add_option("--format", analyze_cfg.formats, "report formats")->delimiter(',');

  std::string show;
  auto* presets = app.add_subcommand("presets", "list built-in scenarios");
  presets->add_option("--show", show, "print the scenario file of one preset");

  CLI11_PARSE(app, argc, argv);
  sweep_cfg.base.save_trajectory = sweep->count("--save-trajectory") > 0;

  if (*run) {
    if (*seed_opt) run_cfg.seed = seed;
    return nsmp::run_command(run_cfg, std::cout, std::cerr);
  }
  if (*sweep) return nsmp::sweep_command(sweep_cfg, std::cout, std::cerr);
  if (*analyze) return nsmp::analyze_command(analyze_cfg, std::cout, std::cerr);
  if (!show.empty()) {
    try {
      std::cout << nsmp::emit_scenario(nsmp::preset(show));
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
    return 0;
  }
  nsmp::list_presets(std::cout);
  return 0;
}
