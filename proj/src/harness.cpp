#include "savch/harness.hpp"

#include <algorithm>
#include <cmath>

#include "savch/spectral.hpp"

namespace savch {

Trace simulate(const ScalarField& phi0, const StepperConfig& cfg, const ModelParams& params, long n_steps,
               const StepObserver& observer) {
  SavState state = bootstrap(phi0, params);
  std::vector<EnergyRecord> records;
  records.reserve(static_cast<std::size_t>(n_steps) + 1);
  records.push_back(make_record(state, params, 0.0));
  double min_denominator = 1.0;
  SavState final_state = advance(std::move(state), cfg, params, n_steps, [&](const StepOutput& out) {
    records.push_back(make_record(out.state, params, out.dissipation));
    min_denominator = std::min(min_denominator, out.scalar_denominator);
    if (observer) observer(out);
  });
  return Trace{std::move(records), std::move(final_state), min_denominator};
}

StepperConfig stepper_config_for(const ScenarioSpec& spec, bool dealias) {
  StepperConfig cfg;
  cfg.dt = spec.dt;
  cfg.scheme = spec.params.kind;
  cfg.dealias = dealias;
  if (spec.name == Scenario::ExactTrig) {
    const Grid grid = spec.grid;
    const ModelParams params = spec.params;
    cfg.forcing = [grid, params](double t) { return manufactured_forcing(t, grid, params); };
  }
  return cfg;
}

ScalarField random_smooth_field(const Grid& grid, std::uint64_t seed, int kmax, double amplitude) {
  Spectrum s(grid);
  std::uint64_t counter = 0;
  for (std::size_t m = 0; m < s.size(); ++m) {
    bool inside = true;
    for (int a = 0; a < grid.dim(); ++a) inside = inside && std::abs(grid.wavenumbers(a)[m]) <= kmax;
    if (!inside) continue;
    const double re = counter_uniform(seed, counter++);
    const double im = counter_uniform(seed, counter++);
    s[m] = {re, im};
  }
  ScalarField f = inverse(s);
  const double peak = f.max_abs();
  if (peak > 0.0) f *= amplitude / peak;
  return f;
}

long count_energy_increases(std::span<const EnergyRecord> records, double rel_tol) {
  if (records.empty()) return 0;
  const double tol = rel_tol * std::abs(records.front().original);
  long count = 0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].original - records[i - 1].original > tol) ++count;
  }
  return count;
}

std::vector<StabilizerCombination> ablation_combinations() {
  return {{"i", 0.0, 0.0, 0.0}, {"ii", 0.0, 0.0, 1e-3}, {"iii", 2.0, 2.0, 0.0}, {"iv", 2.0, 2.0, 1e-3}};
}

std::vector<AblationRun> stabilizer_ablation(const ScenarioSpec& base) {
  const ScalarField phi0 = initial_condition(base);
  const long n_steps = steps_to(base.t_final, base.dt);
  std::vector<AblationRun> runs;
  for (const auto& combo : ablation_combinations()) {
    ModelParams params = base.params;
    params.s1 = combo.s1;
    params.s2 = combo.s2;
    params.s3 = combo.s3;
    ScenarioSpec spec = base;
    spec.params = params;
    Trace trace = simulate(phi0, stepper_config_for(spec), params, n_steps);
    AblationRun run;
    run.combination = combo;
    run.energy_increases = count_energy_increases(trace.records);
    run.records = std::move(trace.records);
    runs.push_back(std::move(run));
  }
  return runs;
}

OracleSweep oracle_sweep(std::span<const int> sizes, std::uint64_t seed, int states_per_case, double dt) {
  OracleSweep sweep;
  std::uint64_t draw = seed;
  for (int n : sizes) {
    const Grid grid(2, {n, n});
    for (Regularization kind : {Regularization::Linear, Regularization::Willmore}) {
      for (double alpha : {0.0, 0.3}) {
        ModelParams params;
        params.alpha = alpha;
        params.kind = kind;
        StepperConfig cfg;
        cfg.dt = dt;
        cfg.scheme = kind;
        for (int k = 0; k < states_per_case; ++k) {
          ScalarField phi_n = random_smooth_field(grid, draw++, 3, 1.0);
          ScalarField phi_nm1 = phi_n + random_smooth_field(grid, draw++, 3, 0.05);
          const double u_n = u_initial(phi_n, params);
          const double u_nm1 = u_initial(phi_nm1, params);
          const SavState state{std::move(phi_n), std::move(phi_nm1), u_n, u_nm1, 1, dt};
          const StepOutput fast = step(state, cfg, params);
          const OracleResult dense = dense_oracle_step(state, cfg, params);
          sweep.max_phi_deviation = std::max(sweep.max_phi_deviation, max_abs_difference(fast.state.phi_n, dense.phi));
          sweep.max_u_deviation = std::max(sweep.max_u_deviation, std::abs(fast.state.u_n - dense.u));
          sweep.min_denominator = std::min(sweep.min_denominator, fast.scalar_denominator);
          ++sweep.probes;
        }
      }
    }
  }
  return sweep;
}

}  // namespace savch
