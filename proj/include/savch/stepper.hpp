#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "savch/field.hpp"
#include "savch/physics.hpp"
#include "savch/spectral.hpp"

namespace savch {

/// BDF2 history: (phi^n, U^n) and (phi^{n-1}, U^{n-1}).
struct SavState {
  ScalarField phi_n;
  ScalarField phi_nm1;
  double u_n = 0.0;
  double u_nm1 = 0.0;
  long step = 0;
  double time = 0.0;
};

struct StepOutput {
  SavState state;
  ScalarField mu;
  double scalar_denominator = 1.0;  // 1 - (1/2) int H chi^{-1}(Lap H)
  double dissipation = 0.0;         // M0 ||grad mu||^2
};

/// Source term S(x, t) added to the right side of the phi equation.
using Forcing = std::function<ScalarField(double t)>;

struct StepperConfig {
  double dt = 1e-4;
  Regularization scheme = Regularization::Linear;
  Forcing forcing;
  /// Apply 2/3-rule truncation to the extrapolated SAV field.
  bool dealias = false;
};

/// Thrown by step() and run(); carries the failing stage and step index.
class StepError : public std::runtime_error {
 public:
  StepError(std::string stage, long step, const std::string& what);
  const std::string& stage() const noexcept { return stage_; }
  long step() const noexcept { return step_; }

 private:
  std::string stage_;
  long step_;
};

/// Symbol of chi = 3/(2 M0 dt) - S1/eps^2 Lap + S2 Lap^2 - c3 Lap^3, with
/// c3 = S3 + beta for the linear scheme and c3 = S3 for the Willmore scheme
/// (selected by params.kind).
OperatorSymbol chi_coefficients(const ModelParams& params, double dt);

/// Starts the two-level history by duplicating (phi0, U0).
SavState bootstrap(const ScalarField& phi0, const ModelParams& params);

/// Step size used in the solves. The step out of a step-0 state reads only
/// (phi^n, U^n) as both history levels and solves with 3 dt / 2, which makes
/// it a first-order (backward Euler) SAV step of length dt.
double solve_step(const SavState& state, double dt);

/// One BDF2 stabilised-SAV step via the three constant-coefficient solves.
StepOutput step(const SavState& state, const StepperConfig& cfg, const ModelParams& params);

using StepObserver = std::function<void(const StepOutput&)>;

/// bootstrap() followed by n_steps calls to step(); observer sees every output.
SavState run(const ScalarField& phi0, const StepperConfig& cfg, const ModelParams& params, long n_steps,
             const StepObserver& observer = {});

/// Continues an existing history for n_steps.
SavState advance(SavState state, const StepperConfig& cfg, const ModelParams& params, long n_steps,
                 const StepObserver& observer = {});

}  // namespace savch
