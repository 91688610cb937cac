#pragma once

#include <optional>
#include <span>
#include <vector>

#include "savch/experiments.hpp"
#include "savch/physics.hpp"
#include "savch/stepper.hpp"

namespace savch {

struct EnergyRecord {
  double time = 0.0;
  double discrete_modified = 0.0;
  double continuous_modified = 0.0;
  double original = 0.0;
  double mass = 0.0;
  double dissipation = 0.0;

  bool operator==(const EnergyRecord&) const = default;
};

/// Discrete modified energy of a two-level state, read as
/// (phi^{n+1}, U^{n+1}) = (phi_n, u_n) and (phi^n, U^n) = (phi_nm1, u_nm1):
///   (U^2 + (2U - U_old)^2)/2 + S1/eps^2 ||dphi||^2/2 + S2 ||grad dphi||^2/2 + S3 ||Lap dphi||^2/2
/// plus, for the linear scheme, (beta/2)(||Lap phi||^2 + ||2 Lap phi - Lap phi_old||^2)/2.
double discrete_modified_energy(const SavState& state, const ModelParams& params);

/// U^2 - B, plus (beta/2)||Lap phi||^2 for the linear scheme.
double continuous_modified_energy(const SavState& state, const ModelParams& params);

EnergyRecord make_record(const SavState& state, const ModelParams& params, double dissipation);

struct EnergyLawReport {
  double max_violation = 0.0;  // max over steps of E^{n+1} - E^n + dt * dissipation^{n+1}
  long worst_step = 0;
  long violations = 0;
  double tolerance = 0.0;
  bool pass = true;
};

/// trace[0] is the initial record; trace[i] carries the dissipation of step i.
EnergyLawReport energy_law_check(std::span<const EnergyRecord> trace, double dt);

struct MassReport {
  double max_relative_drift = 0.0;
  bool exempt = false;  // forced runs need not conserve mass
  bool pass = true;
};

MassReport mass_trace(std::span<const EnergyRecord> trace, bool forced = false, double tolerance = 1e-10);

/// Which part of the free energy a variational check targets.
enum class EnergyPart { Anisotropic, Regularization, Total };

struct VariationalSample {
  double s = 0.0;
  double finite_difference = 0.0;
  double mismatch = 0.0;
};

struct VariationalReport {
  double analytic = 0.0;  // int force * psi
  std::vector<VariationalSample> samples;
  /// log(mismatch_i / mismatch_{i+1}) / log(s_i / s_{i+1}) for consecutive samples.
  std::vector<double> observed_orders;
};

double energy_part(const ScalarField& phi, const ModelParams& params, EnergyPart part);
ScalarField force_part(const ScalarField& phi, const ModelParams& params, EnergyPart part);

/// Compares centred differences (E(phi + s psi) - E(phi - s psi)) / (2s)
/// against int force * psi for every s.
VariationalReport variational_check(const ScalarField& phi, const ScalarField& psi, const ModelParams& params,
                                    std::span<const double> s_values, EnergyPart part = EnergyPart::Total);

struct OracleResult {
  ScalarField phi;
  double u = 0.0;
};

/// Reference step: assembles the coupled operator chi - (1/2) Lap H* (H*, .)
/// densely by probing unit impulses and solves it with LU. Grids up to 4096 nodes.
OracleResult dense_oracle_step(const SavState& state, const StepperConfig& cfg, const ModelParams& params);

enum class Benchmark { Exact, FinestRun };

struct ConvergenceRow {
  double dt = 0.0;
  double l2_error = 0.0;
  std::optional<double> observed_order;
};

struct ConvergenceSetup {
  Scenario scenario = Scenario::ExactTrig;
  Grid grid{2, {64, 64}};
  ModelParams params;
  std::vector<double> dt_ladder;
  Benchmark benchmark = Benchmark::Exact;
  double benchmark_dt = 6.25e-5;
  double t_final = 0.1;
};

/// L2 distance sqrt(int (a - b)^2).
double l2_distance(const ScalarField& a, const ScalarField& b);

/// L2 distance normalised by the domain measure: sqrt(int (a - b)^2 / |Omega|).
double rms_distance(const ScalarField& a, const ScalarField& b);

/// Number of steps of size dt that land on t_final; throws if they do not.
long steps_to(double t_final, double dt);

/// Runs the ladder and reports L2 errors at t_final against the benchmark.
/// Exact requires the exact_trig scenario, which switches on manufactured forcing.
std::vector<ConvergenceRow> convergence_study(const ConvergenceSetup& setup);

/// Mean observed order over the last `rungs` rows that carry an order.
double mean_tail_order(std::span<const ConvergenceRow> rows, std::size_t rungs);

}  // namespace savch
