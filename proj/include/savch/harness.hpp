#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "savch/diagnostics.hpp"
#include "savch/experiments.hpp"
#include "savch/stepper.hpp"

namespace savch {

/// Energy records of a run: the initial state followed by one record per step.
struct Trace {
  std::vector<EnergyRecord> records;
  SavState final_state;
  double min_denominator = 1.0;
};

Trace simulate(const ScalarField& phi0, const StepperConfig& cfg, const ModelParams& params, long n_steps,
               const StepObserver& observer = {});

/// Stepper configuration for a scenario; exact_trig switches on manufactured forcing.
StepperConfig stepper_config_for(const ScenarioSpec& spec, bool dealias = false);

/// Smooth random field: sum of Fourier modes with |k_a| <= kmax and
/// uniformly random coefficients scaled to the given peak amplitude.
ScalarField random_smooth_field(const Grid& grid, std::uint64_t seed, int kmax = 3, double amplitude = 1.0);

/// Number of steps whose original energy rises by more than rel_tol * |E0|.
long count_energy_increases(std::span<const EnergyRecord> records, double rel_tol = 0.0);

struct StabilizerCombination {
  std::string label;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
};

/// (i) none, (ii) S3 only, (iii) S1 and S2, (iv) all three.
std::vector<StabilizerCombination> ablation_combinations();

struct AblationRun {
  StabilizerCombination combination;
  std::vector<EnergyRecord> records;
  long energy_increases = 0;
};

/// Runs every stabiliser combination on the base scenario up to its t_final.
std::vector<AblationRun> stabilizer_ablation(const ScenarioSpec& base);

struct OracleSweep {
  double max_phi_deviation = 0.0;
  double max_u_deviation = 0.0;
  double min_denominator = 1.0;
  int probes = 0;
};

/// Dense-versus-decoupled agreement over random two-level states on square
/// grids of the given sizes, both schemes, alpha in {0, 0.3}.
OracleSweep oracle_sweep(std::span<const int> sizes, std::uint64_t seed, int states_per_case = 2, double dt = 1e-3);

}  // namespace savch
