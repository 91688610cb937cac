// Command-line driver: run, converge, ablation, oracle-check.
//
// Every subcommand prints a one-line JSON summary on stdout as its last line
// and exits 0 iff all of its checks pass (2 on usage or input errors).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "savch/diagnostics.hpp"
#include "savch/harness.hpp"
#include "savch/io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace savch;

namespace {

std::string step_name(const char* prefix, long step, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%06ld%s", prefix, step, ext);
  return buf;
}

void save_snapshot(const RunConfig& cfg, const SavState& state) {
  const fs::path dir = cfg.output_dir / "snapshots";
  write_snapshot(state.phi_n, state.time, dir / step_name("phi_", state.step, ".savfld"));
  if (cfg.images) {
    const Grid& g = state.phi_n.grid();
    const int mid = g.dim() == 3 ? g.points(0) / 2 : 0;
    export_slice_image(state.phi_n, dir / step_name("phi_", state.step, ".pgm"), 0, mid);
  }
}

int command_run(const fs::path& config_path) {
  const RunConfig cfg = load_config(config_path);
  const ScenarioSpec& spec = cfg.scenario;
  const ModelParams& params = spec.params;
  const long n_steps = steps_to(spec.t_final, spec.dt);
  const ScalarField phi0 = initial_condition(spec);
  const StepperConfig stepper = stepper_config_for(spec, cfg.dealias);
  const bool forced = static_cast<bool>(stepper.forcing);

  fs::create_directories(cfg.output_dir);
  {
    std::ofstream out(cfg.output_dir / "config.ini");
    out << serialize_config(cfg);
  }

  json checks = json::object();
  bool pass = true;

  if (cfg.checks.oracle) {
    if (spec.grid.size() <= 4096) {
      const SavState start = bootstrap(phi0, params);
      const StepOutput fast = step(start, stepper, params);
      const OracleResult dense = dense_oracle_step(start, stepper, params);
      const double dphi = max_abs_difference(fast.state.phi_n, dense.phi);
      const double du = std::abs(fast.state.u_n - dense.u);
      const bool ok = dphi <= 1e-10 && du <= 1e-12;
      checks["oracle"] = {{"pass", ok}, {"max_phi_deviation", dphi}, {"u_deviation", du}};
      pass = pass && ok;
    } else {
      checks["oracle"] = {{"pass", true}, {"skipped", "grid larger than 4096 nodes"}};
    }
  }

  save_snapshot(cfg, bootstrap(phi0, params));
  const Trace trace = simulate(phi0, stepper, params, n_steps, [&](const StepOutput& out) {
    if (out.state.step % cfg.snapshot_every == 0 || out.state.step == n_steps) save_snapshot(cfg, out.state);
  });

  std::vector<EnergyRecord> written;
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    if (i % static_cast<std::size_t>(cfg.trace_every) == 0 || i + 1 == trace.records.size()) {
      written.push_back(trace.records[i]);
    }
  }
  write_energy_csv(written, cfg.output_dir / "energy.csv");

  if (cfg.checks.energy_law) {
    if (forced) {
      checks["energy_law"] = {{"pass", true}, {"exempt", "forced run"}};
    } else {
      const EnergyLawReport r = energy_law_check(trace.records, spec.dt);
      checks["energy_law"] = {{"pass", r.pass}, {"max_violation", r.max_violation}, {"tolerance", r.tolerance},
                              {"violations", r.violations}};
      pass = pass && r.pass;
    }
  }
  if (cfg.checks.mass) {
    const MassReport r = mass_trace(trace.records, forced);
    checks["mass"] = {{"pass", r.pass}, {"max_relative_drift", r.max_relative_drift}, {"exempt", r.exempt}};
    pass = pass && r.pass;
  }

  const json summary = {{"command", "run"},
                        {"pass", pass},
                        {"steps", n_steps},
                        {"final_time", trace.final_state.time},
                        {"min_denominator", trace.min_denominator},
                        {"checks", checks}};
  std::cout << summary.dump() << std::endl;
  return pass ? 0 : 1;
}

struct ConvergeOptions {
  std::string scheme = "linear";
  std::string benchmark = "exact";
  int points = 64;
  std::vector<double> ladder;
  double benchmark_dt = 6.25e-5;
  double t_final = 0.1;
  double min_order = 1.8;
};

int command_converge(const ConvergeOptions& opt) {
  ConvergenceSetup setup;
  setup.params.kind = parse_regularization(opt.scheme);
  setup.grid = Grid(2, {opt.points, opt.points});
  setup.t_final = opt.t_final;
  setup.benchmark_dt = opt.benchmark_dt;
  if (opt.benchmark == "exact") {
    setup.benchmark = Benchmark::Exact;
    setup.scenario = Scenario::ExactTrig;
    setup.params.alpha = 0.0;
    setup.params.m0 = setup.params.eps * setup.params.eps;
    setup.dt_ladder = {1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4};
  } else if (opt.benchmark == "finest") {
    setup.benchmark = Benchmark::FinestRun;
    setup.scenario = Scenario::Circle;
    setup.dt_ladder = {2e-3, 1e-3, 5e-4, 2.5e-4, 1.25e-4};
  } else {
    throw std::invalid_argument("benchmark must be 'exact' or 'finest'");
  }
  if (!opt.ladder.empty()) setup.dt_ladder = opt.ladder;

  const std::vector<ConvergenceRow> rows = convergence_study(setup);
  std::cout << format_convergence_table(rows);
  const double tail = mean_tail_order(rows, 3);
  const bool pass = tail >= opt.min_order;
  json table = json::array();
  for (const auto& r : rows) {
    table.push_back({{"dt", r.dt}, {"l2_error", r.l2_error},
                     {"order", r.observed_order ? json(*r.observed_order) : json(nullptr)}});
  }
  const json summary = {{"command", "converge"}, {"pass", pass},      {"scheme", opt.scheme},
                        {"benchmark", opt.benchmark}, {"mean_tail_order", tail}, {"rows", table}};
  std::cout << summary.dump() << std::endl;
  return pass ? 0 : 1;
}

struct AblationOptions {
  fs::path out = "ablation";
  std::string scheme = "linear";
  int points = 128;
  double dt = 1e-4;
  double t_final = 3e-2;
};

int command_ablation(const AblationOptions& opt) {
  ScenarioSpec base = default_scenario(Scenario::Circle);
  base.grid = Grid(2, {opt.points, opt.points});
  base.params.kind = parse_regularization(opt.scheme);
  base.dt = opt.dt;
  base.t_final = opt.t_final;

  const std::vector<AblationRun> runs = stabilizer_ablation(base);
  json results = json::array();
  long increases_i = 0;
  long increases_iv = 0;
  for (const auto& run : runs) {
    const fs::path csv = opt.out / ("ablation_" + run.combination.label + ".csv");
    write_energy_csv(run.records, csv);
    results.push_back({{"combination", run.combination.label},
                       {"s1", run.combination.s1},
                       {"s2", run.combination.s2},
                       {"s3", run.combination.s3},
                       {"energy_increases", run.energy_increases},
                       {"csv", csv.string()}});
    if (run.combination.label == "i") increases_i = run.energy_increases;
    if (run.combination.label == "iv") increases_iv = run.energy_increases;
  }
  const bool pass = increases_iv == 0 && increases_i > 0;
  const json summary = {{"command", "ablation"}, {"pass", pass}, {"runs", results}};
  std::cout << summary.dump() << std::endl;
  return pass ? 0 : 1;
}

int command_oracle(const std::vector<int>& sizes, std::uint64_t seed) {
  const OracleSweep sweep = oracle_sweep(sizes, seed);
  const bool pass = sweep.max_phi_deviation <= 1e-10 && sweep.max_u_deviation <= 1e-12 && sweep.min_denominator >= 1.0 - 1e-10;
  const json summary = {{"command", "oracle-check"},
                        {"pass", pass},
                        {"probes", sweep.probes},
                        {"max_phi_deviation", sweep.max_phi_deviation},
                        {"max_u_deviation", sweep.max_u_deviation},
                        {"min_denominator", sweep.min_denominator}};
  std::cout << summary.dump() << std::endl;
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stabilised-SAV BDF2 solver for the anisotropic Cahn-Hilliard equation"};
  app.require_subcommand(1);

  fs::path config_path;
  auto* run = app.add_subcommand("run", "Run a simulation described by a configuration file");
  run->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);

  ConvergeOptions conv;
  auto* converge = app.add_subcommand("converge", "Temporal convergence ladder");
  converge->add_option("--scheme", conv.scheme, "linear or willmore")->capture_default_str();
  converge->add_option("--benchmark", conv.benchmark, "exact (manufactured) or finest (reference run)")
      ->capture_default_str();
  converge->add_option("--points", conv.points, "Grid points per axis")->capture_default_str();
  converge->add_option("--ladder", conv.ladder, "Time steps, strictly decreasing");
  converge->add_option("--benchmark-dt", conv.benchmark_dt, "Reference time step for 'finest'")->capture_default_str();
  converge->add_option("--t-final", conv.t_final, "Final time")->capture_default_str();
  converge->add_option("--min-order", conv.min_order, "Pass threshold on the mean order of the finest three rungs")
      ->capture_default_str();

  AblationOptions abl;
  auto* ablation = app.add_subcommand("ablation", "Stabiliser combinations on the anisotropic circle");
  ablation->add_option("--out", abl.out, "Output directory")->capture_default_str();
  ablation->add_option("--scheme", abl.scheme, "linear or willmore")->capture_default_str();
  ablation->add_option("--points", abl.points, "Grid points per axis")->capture_default_str();
  ablation->add_option("--dt", abl.dt, "Time step")->capture_default_str();
  ablation->add_option("--t-final", abl.t_final, "Final time")->capture_default_str();

  std::vector<int> sizes{8};
  std::uint64_t seed = 7;
  auto* oracle = app.add_subcommand("oracle-check", "Dense coupled solve versus the decoupled procedure");
  oracle->add_option("--points", sizes, "Grid sizes (square grids)")->capture_default_str();
  oracle->add_option("--seed", seed, "Seed for the random states")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return command_run(config_path);
    if (*converge) return command_converge(conv);
    if (*ablation) return command_ablation(abl);
    if (*oracle) return command_oracle(sizes, seed);
  } catch (const std::invalid_argument& e) {
    std::cout << json{{"pass", false}, {"error", e.what()}, {"kind", "input"}}.dump() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cout << json{{"pass", false}, {"error", e.what()}, {"kind", "runtime"}}.dump() << std::endl;
    return 1;
  }
  return 2;
}
