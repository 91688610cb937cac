#include "savch/stepper.hpp"

#include <cmath>
#include <string>

namespace savch {

namespace {

void require_finite(const ScalarField& f, const char* stage, long step_index) {
  if (!f.all_finite()) throw StepError(stage, step_index, "non-finite values");
}

void require_finite(double v, const char* stage, long step_index) {
  if (!std::isfinite(v)) throw StepError(stage, step_index, "non-finite scalar " + std::to_string(v));
}

}  // namespace

StepError::StepError(std::string stage, long step, const std::string& what)
    : std::runtime_error("step " + std::to_string(step) + " [" + stage + "]: " + what),
      stage_(std::move(stage)),
      step_(step) {}

OperatorSymbol chi_coefficients(const ModelParams& params, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be > 0");
  OperatorSymbol p;
  p.c0 = 3.0 / (2.0 * params.m0 * dt);
  p.c1 = params.s1 / (params.eps * params.eps);
  p.c2 = params.s2;
  p.c3 = params.kind == Regularization::Linear ? params.s3 + params.beta : params.s3;
  return p;
}

double solve_step(const SavState& state, double dt) { return state.step == 0 ? 1.5 * dt : dt; }

SavState bootstrap(const ScalarField& phi0, const ModelParams& params) {
  params.validate();
  if (!phi0.all_finite()) throw std::invalid_argument("initial field is not finite");
  const double u0 = u_initial(phi0, params);
  return SavState{phi0, phi0, u0, u0, 0, 0.0};
}

StepOutput step(const SavState& state, const StepperConfig& cfg, const ModelParams& params) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("time step must be > 0");
  if (cfg.scheme != params.kind) {
    throw std::invalid_argument("stepper scheme and model regularization disagree");
  }
  if (!(state.phi_n.grid() == state.phi_nm1.grid())) {
    throw std::invalid_argument("history fields live on different grids");
  }
  const long index = state.step + 1;
  const double dt = solve_step(state, cfg.dt);
  const double inv_eps2 = 1.0 / (params.eps * params.eps);
  const ScalarField& phi_prev = state.step == 0 ? state.phi_n : state.phi_nm1;
  const double u_prev = state.step == 0 ? state.u_n : state.u_nm1;

  // (a) extrapolation and BDF2 history combination
  const ScalarField phi_star = 2.0 * state.phi_n - phi_prev;
  const ScalarField history = 4.0 * state.phi_n - phi_prev;

  // (b) nonlinear SAV field at the extrapolated state
  ScalarField h_star(phi_star.grid());
  try {
    h_star = sav_field(phi_star, params).field;
  } catch (const std::exception& e) {
    throw StepError("sav_field", index, e.what());
  }
  Spectrum h_hat = forward(h_star);
  if (cfg.dealias) {
    truncate_two_thirds(h_hat);
    h_star = inverse(h_hat);
  }
  require_finite(h_star, "sav_field", index);

  // (c) g = (4U^n - U^{n-1})/3 - (1/2) int H* (4 phi^n - phi^{n-1})/3
  const double g = (4.0 * state.u_n - u_prev) / 3.0 - 0.5 * integrate(h_star * history) / 3.0;
  require_finite(g, "scalar_g", index);

  // (d) right side of the coupled phi equation
  const Spectrum star_hat = forward(phi_star);
  Spectrum inner = g * h_hat;
  inner -= (params.s1 * inv_eps2) * star_hat;
  inner += params.s2 * laplacian(star_hat);
  inner -= params.s3 * bilaplacian(star_hat);
  Spectrum rhs = (1.0 / (2.0 * params.m0 * dt)) * forward(history) + laplacian(inner);
  if (cfg.forcing) {
    const ScalarField source = cfg.forcing(state.time + cfg.dt);
    if (!(source.grid() == phi_star.grid())) throw StepError("forcing", index, "forcing on a different grid");
    rhs += (1.0 / params.m0) * forward(source);
  }

  // (e) the two auxiliary constant-coefficient solves
  const OperatorSymbol chi = chi_coefficients(params, dt);
  const Spectrum lap_h = laplacian(h_hat);
  const Spectrum psi1 = solve_symbol(rhs, chi);
  const Spectrum psi2 = solve_symbol(lap_h, chi);

  // (f) rank-one scalar solve for int H* phi^{n+1}
  const double denominator = 1.0 - 0.5 * inner_product(h_hat, psi2);
  require_finite(denominator, "scalar_solve", index);
  if (denominator < 1.0 - 1e-8) {
    throw StepError("scalar_solve", index,
                    "denominator " + std::to_string(denominator) + " < 1; -chi^{-1} Lap is not positive");
  }
  const double h_dot_phi = inner_product(h_hat, psi1) / denominator;
  require_finite(h_dot_phi, "scalar_solve", index);

  // (g) auxiliary variable
  const double u_next = 0.5 * h_dot_phi + g;

  // (h) third solve for phi^{n+1}
  const Spectrum phi_hat = solve_symbol(rhs + (0.5 * h_dot_phi) * lap_h, chi);
  ScalarField phi_next = inverse(phi_hat);
  require_finite(phi_next, "phi_update", index);

  // (i) chemical potential for the dissipation diagnostic
  const Spectrum jump = phi_hat - star_hat;
  Spectrum mu_hat = u_next * h_hat;
  mu_hat += (params.s1 * inv_eps2) * jump;
  mu_hat -= params.s2 * laplacian(jump);
  mu_hat += params.s3 * bilaplacian(jump);
  if (params.kind == Regularization::Linear) mu_hat += params.beta * bilaplacian(phi_hat);
  const double dissipation = params.m0 * gradient_norm_squared(mu_hat);
  ScalarField mu = inverse(mu_hat);
  require_finite(mu, "chemical_potential", index);

  StepOutput out{SavState{std::move(phi_next), state.phi_n, u_next, state.u_n, index, index * cfg.dt}, std::move(mu),
                 denominator, dissipation};
  return out;
}

SavState advance(SavState state, const StepperConfig& cfg, const ModelParams& params, long n_steps,
                 const StepObserver& observer) {
  for (long i = 0; i < n_steps; ++i) {
    StepOutput out = step(state, cfg, params);
    if (observer) observer(out);
    state = std::move(out.state);
  }
  return state;
}

SavState run(const ScalarField& phi0, const StepperConfig& cfg, const ModelParams& params, long n_steps,
             const StepObserver& observer) {
  if (n_steps < 1) throw std::invalid_argument("run needs at least one step");
  return advance(bootstrap(phi0, params), cfg, params, n_steps, observer);
}

}  // namespace savch
