#include "nsmp/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "nsmp/config.hpp"
#include "nsmp/errors.hpp"
#include "nsmp/field_io.hpp"
#include "nsmp/operators.hpp"
#include "nsmp/solver.hpp"

namespace nsmp {

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{"max_principle", "coincidence", "pressure_identity",
                                              "apriori",       "stability",   "energy_residual"};
  return names;
}

std::vector<std::string> expand_checks(const std::vector<std::string>& names) {
  std::set<std::string> wanted;
  for (const auto& n : names) {
    if (n == "all") {
      wanted.insert(known_checks().begin(), known_checks().end());
      continue;
    }
    if (std::find(known_checks().begin(), known_checks().end(), n) == known_checks().end())
      throw ValidationError("unknown check '" + n + "'");
    wanted.insert(n);
  }
  std::vector<std::string> out;
  for (const auto& n : known_checks())
    if (wanted.count(n)) out.push_back(n);
  return out;
}

void apply_seed(ScenarioSpec& spec, std::uint64_t seed) {
  if (spec.initial.kind == "random") spec.initial.seed = seed;
}

void apply_resolution(ScenarioSpec& spec, int n) {
  for (int a = 0; a < 3; ++a)
    if (spec.grid.active(a)) spec.grid.n[a] = n;
}

namespace {

void write_report(const std::filesystem::path& dir, const ClaimReport& rep, const std::vector<std::string>& formats) {
  for (const auto& f : formats) {
    const auto path = dir / (rep.kind + "." + f);
    std::ofstream os(path);
    if (!os) throw Error("cannot write " + path.string());
    if (f == "json")
      write_json(os, rep);
    else if (f == "csv")
      write_csv(os, rep);
    else
      throw ValidationError("unknown output format '" + f + "'");
  }
}

ClaimReport coincidence_over(const Trajectory& traj) {
  ClaimReport all;
  all.kind = "coincidence";
  for (const FlowState& st : traj.states) {
    const auto sites = find_interior_maxima(kinetic_energy_density(st.velocity));
    ClaimReport r = extremum_coincidence(st, sites);
    all.records.insert(all.records.end(), r.records.begin(), r.records.end());
    all.observations.insert(all.observations.end(), r.observations.begin(), r.observations.end());
  }
  return all;
}

void tally(RunSummary& s, const ClaimReport& rep) {
  CheckCount& c = s.checks[rep.kind];
  for (const ClaimRecord& r : rep.records) {
    CheckCount& cl = s.claims[r.claim];
    if (r.verdict == Verdict::Pass) {
      ++c.pass;
      ++cl.pass;
    } else {
      ++c.flag;
      ++cl.flag;
    }
  }
}

nlohmann::json summary_json(const RunSummary& s) {
  nlohmann::json j;
  j["scenario"] = s.scenario;
  j["seed"] = s.seed;
  j["steps"] = s.steps;
  j["stored_states"] = s.stored_states;
  for (const auto& [k, c] : s.checks) j["checks"][k] = {{"pass", c.pass}, {"flag", c.flag}};
  for (const auto& [k, c] : s.claims) j["claims"][k] = {{"pass", c.pass}, {"flag", c.flag}};
  if (!j.contains("checks")) j["checks"] = nlohmann::json::object();
  if (!j.contains("claims")) j["claims"] = nlohmann::json::object();
  return j;
}

std::string number_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RunSummary execute_run(const ScenarioSpec& spec_in, const RunConfig& cfg) {
  ScenarioSpec spec = spec_in;
  if (cfg.seed) apply_seed(spec, *cfg.seed);
  const std::vector<std::string> checks = expand_checks(cfg.checks);
  for (const auto& f : cfg.formats)
    if (f != "json" && f != "csv") throw ValidationError("unknown output format '" + f + "'");

  const auto scenario = std::make_shared<const Scenario>(instantiate(spec, {.auto_project = cfg.auto_project}));
  RunSummary s;
  s.scenario = spec.name;
  s.seed = cfg.seed.value_or(spec.initial.seed);
  s.steps = scenario->steps;

  const Trajectory traj = run(scenario, {}, cfg.stride);
  s.stored_states = traj.states.size();
  std::filesystem::create_directories(cfg.out);
  if (cfg.save_trajectory) write_trajectory(cfg.out, traj);
  {
    std::ofstream os(cfg.out / "scenario.toml");
    os << emit_scenario(spec);
  }

  for (const auto& check : checks) {
    ClaimReport rep;
    if (check == "max_principle") {
      rep = max_principle_report(traj);
    } else if (check == "coincidence") {
      rep = coincidence_over(traj);
    } else if (check == "pressure_identity") {
      rep = pressure_identity_report(traj);
    } else if (check == "apriori") {
      rep = apriori_report(traj, apriori_constants(*scenario));
    } else if (check == "stability") {
      rep = stability_report(*scenario, cfg.delta, s.seed, cfg.stride);
    } else if (check == "energy_residual") {
      rep = energy_residual_report(traj);
    }
    rep.kind = check;
    rep.scenario = spec.name;
    rep.seed = s.seed;
    write_report(cfg.out, rep, cfg.formats);
    tally(s, rep);
    s.reports.push_back(std::move(rep));
  }
  std::ofstream os(cfg.out / "summary.json");
  os << summary_json(s).dump(2) << '\n';
  return s;
}

void write_summary(std::ostream& os, const RunSummary& s) {
  os << "scenario " << s.scenario << "  seed " << s.seed << "  steps " << s.steps << "  stored states "
     << s.stored_states << '\n';
  if (s.checks.empty()) {
    os << "no checks requested\n";
    return;
  }
  os << std::left << std::setw(36) << "check" << std::right << std::setw(8) << "PASS" << std::setw(8) << "FLAG"
     << '\n';
  for (const auto& [k, c] : s.checks)
    os << std::left << std::setw(36) << k << std::right << std::setw(8) << c.pass << std::setw(8) << c.flag << '\n';
  os << '\n' << std::left << std::setw(36) << "claim" << std::right << std::setw(8) << "PASS" << std::setw(8) << "FLAG"
     << '\n';
  for (const auto& [k, c] : s.claims)
    os << std::left << std::setw(36) << k << std::right << std::setw(8) << c.pass << std::setw(8) << c.flag << '\n';
}

namespace {

/// "name: " unless the message already starts with the scenario name.
std::string with_scenario(const std::string& name, const std::string& what) {
  return what.rfind(name + ":", 0) == 0 ? what : name + ": " + what;
}

void report_error(std::ostream& err, const std::string& scenario, const std::exception& e) {
  const std::string what = e.what();
  err << "error: " << (scenario.empty() ? what : with_scenario(scenario, what));
  if (const auto* v = dynamic_cast<const ValidationError*>(&e); v && v->violated() != Assumption::None)
    err << " [violated assumption: " << to_string(v->violated()) << "]";
  err << '\n';
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  ScenarioSpec spec;
  try {
    spec = parse_scenario_spec(cfg.scenario);
  } catch (const std::exception& e) {
    report_error(err, "", e);
    return 1;
  }
  try {
    const RunSummary s = execute_run(spec, cfg);
    write_summary(out, s);
    out << "reports written to " << cfg.out.string() << '\n';
    return 0;
  } catch (const std::exception& e) {
    report_error(err, spec.name, e);
    return 1;
  }
}

std::vector<SweepRow> execute_sweep(const SweepConfig& cfg) {
  const ScenarioSpec base = parse_scenario_spec(cfg.base.scenario);
  const auto axis = [](const auto& v, auto fallback) {
    using T = decltype(fallback);
    return v.empty() ? std::vector<T>{fallback} : std::vector<T>(v.begin(), v.end());
  };
  int base_n = 0;
  for (int a = 0; a < 3; ++a)
    if (base.grid.active(a)) base_n = std::max(base_n, base.grid.n[a]);
  const auto mus = axis(cfg.viscosities, base.viscosity);
  const auto ns = axis(cfg.resolutions, base_n);
  const auto dts = axis(cfg.time_steps, base.dt);
  const auto seeds = axis(cfg.seeds, cfg.base.seed.value_or(base.initial.seed));

  std::vector<SweepRow> rows;
  for (double mu : mus)
    for (int n : ns)
      for (double dt : dts)
        for (std::uint64_t seed : seeds) {
          SweepRow r;
          r.cell = static_cast<int>(rows.size());
          r.viscosity = mu;
          r.resolution = n;
          r.dt = dt;
          r.seed = seed;
          rows.push_back(r);
        }

  const auto run_cell = [&](SweepRow& r) {
    char name[32];
    std::snprintf(name, sizeof name, "cell_%03d", r.cell);
    RunConfig rc = cfg.base;
    rc.out = cfg.base.out / name;
    rc.seed = r.seed;
    ScenarioSpec spec = base;
    spec.viscosity = r.viscosity;
    spec.dt = r.dt;
    apply_resolution(spec, r.resolution);
    try {
      const RunSummary s = execute_run(spec, rc);
      r.ok = true;
      r.checks = s.checks;
      for (const auto& [k, c] : s.checks) {
        r.pass += c.pass;
        r.flag += c.flag;
      }
    } catch (const std::exception& e) {
      r.ok = false;
      r.error = with_scenario(spec.name, e.what());
    }
  };

  int jobs = cfg.jobs > 0 ? cfg.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = std::min<int>(jobs, static_cast<int>(rows.size()));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> workers;
    for (int w = 0; w < jobs; ++w)
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) run_cell(rows[i]);
      });
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, const std::vector<std::string>& checks) {
  os << "cell,viscosity,resolution,dt,seed,status,pass,flag";
  for (const auto& c : checks) os << ',' << c << "_flag";
  os << ",error\n";
  for (const SweepRow& r : rows) {
    os << r.cell << ',' << number_text(r.viscosity) << ',' << r.resolution << ',' << number_text(r.dt) << ','
       << r.seed << ',' << (r.ok ? "ok" : "error") << ',' << r.pass << ',' << r.flag;
    for (const auto& c : checks) {
      const auto it = r.checks.find(c);
      os << ',' << (it == r.checks.end() ? 0 : it->second.flag);
    }
    std::string msg = r.error;
    std::replace(msg.begin(), msg.end(), '"', '\'');
    os << ",\"" << msg << "\"\n";
  }
}

int sweep_command(const SweepConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<SweepRow> rows;
  std::vector<std::string> checks;
  try {
    checks = expand_checks(cfg.base.checks);
    rows = execute_sweep(cfg);
    std::filesystem::create_directories(cfg.base.out);
    std::ofstream csv(cfg.base.out / "summary.csv");
    write_sweep_csv(csv, rows, checks);
    nlohmann::json j = nlohmann::json::array();
    for (const SweepRow& r : rows) {
      nlohmann::json e{{"cell", r.cell}, {"viscosity", r.viscosity}, {"resolution", r.resolution}, {"dt", r.dt},
                       {"seed", r.seed}, {"status", r.ok ? "ok" : "error"}, {"pass", r.pass}, {"flag", r.flag}};
      for (const auto& [k, c] : r.checks) e["checks"][k] = {{"pass", c.pass}, {"flag", c.flag}};
      if (!r.ok) e["error"] = r.error;
      j.push_back(std::move(e));
    }
    std::ofstream js(cfg.base.out / "summary.json");
    js << j.dump(2) << '\n';
  } catch (const std::exception& e) {
    report_error(err, "", e);
    return 1;
  }
  write_sweep_csv(out, rows, checks);
  const auto failed = std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.ok; });
  out << rows.size() << " cells, " << (rows.size() - failed) << " ok, " << failed << " failed\n";
  for (const SweepRow& r : rows)
    if (!r.ok) err << "cell " << r.cell << ": " << r.error << '\n';
  return failed ? 1 : 0;
}

int analyze_command(const AnalyzeConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    std::vector<std::string> names = cfg.checks;
    if (names.empty() || std::find(names.begin(), names.end(), "all") != names.end())
      names = {"coincidence", "pressure_identity"};
    const std::vector<std::string> checks = expand_checks(names);
    for (const auto& c : checks)
      if (c != "coincidence" && c != "pressure_identity")
        throw ValidationError("check '" + c + "' needs a trajectory; analyze supports coincidence and pressure_identity");
    const FieldRecord rec = load_field(cfg.field);
    if (rec.components.size() != 3) throw ValidationError("analyze expects a vector field file");
    const VectorField u(rec.components[0], rec.components[1], rec.components[2]);
    const FlowState st{0.0, u, pressure_from_velocity(u)};
    Trajectory traj;
    traj.states.push_back(st);

    RunSummary s;
    s.scenario = cfg.field.filename().string();
    s.stored_states = 1;
    std::filesystem::create_directories(cfg.out);
    for (const auto& c : checks) {
      ClaimReport rep = c == "coincidence" ? coincidence_over(traj) : pressure_identity_report(traj);
      rep.kind = c;
      rep.scenario = s.scenario;
      write_report(cfg.out, rep, cfg.formats);
      tally(s, rep);
    }
    std::ofstream os(cfg.out / "summary.json");
    os << summary_json(s).dump(2) << '\n';
    write_summary(out, s);
    return 0;
  } catch (const std::exception& e) {
    report_error(err, "", e);
    return 1;
  }
}

void list_presets(std::ostream& os) {
  for (const auto& name : preset_names()) {
    const ScenarioSpec s = preset(name);
    os << std::left << std::setw(24) << name << to_string(s.grid.bc) << '/' << to_string(s.grid.scheme) << ' '
       << s.grid.n[0] << 'x' << s.grid.n[1] << 'x' << s.grid.n[2] << "  mu=" << s.viscosity << "  T=" << s.horizon
       << "  dt=" << s.dt << "  initial=" << s.initial.kind << "  forcing=" << s.forcing.kind << '\n';
  }
}

}  // namespace nsmp
