#include "savch/diagnostics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "savch/spectral.hpp"

namespace savch {

namespace {

double norm_squared(const Spectrum& s) { return inner_product(s, s); }

}  // namespace

double discrete_modified_energy(const SavState& state, const ModelParams& params) {
  const double u = state.u_n;
  const double u_old = state.u_nm1;
  const Spectrum phi = forward(state.phi_n);
  const Spectrum phi_old = forward(state.phi_nm1);
  const Spectrum jump = phi - phi_old;
  const Spectrum lap_jump = laplacian(jump);

  double e = 0.5 * (u * u + (2.0 * u - u_old) * (2.0 * u - u_old));
  e += 0.5 * params.s1 / (params.eps * params.eps) * norm_squared(jump);
  e += 0.5 * params.s2 * gradient_norm_squared(jump);
  e += 0.5 * params.s3 * norm_squared(lap_jump);
  if (params.kind == Regularization::Linear) {
    const Spectrum lap = laplacian(phi);
    const Spectrum extrapolated = 2.0 * lap - laplacian(phi_old);
    e += 0.25 * params.beta * (norm_squared(lap) + norm_squared(extrapolated));
  }
  return e;
}

double continuous_modified_energy(const SavState& state, const ModelParams& params) {
  double e = state.u_n * state.u_n - params.b;
  if (params.kind == Regularization::Linear) e += 0.5 * params.beta * norm_squared(laplacian(forward(state.phi_n)));
  return e;
}

EnergyRecord make_record(const SavState& state, const ModelParams& params, double dissipation) {
  EnergyRecord r;
  r.time = state.time;
  r.discrete_modified = discrete_modified_energy(state, params);
  r.continuous_modified = continuous_modified_energy(state, params);
  r.original = original_energy(state.phi_n, params).total;
  r.mass = integrate(state.phi_n);
  r.dissipation = dissipation;
  return r;
}

EnergyLawReport energy_law_check(std::span<const EnergyRecord> trace, double dt) {
  EnergyLawReport report;
  if (trace.empty()) return report;
  report.tolerance = 1e-8 * std::max(1.0, std::abs(trace.front().discrete_modified));
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < trace.size(); ++i) {
    const double v = trace[i].discrete_modified - trace[i - 1].discrete_modified + dt * trace[i].dissipation;
    if (v > report.max_violation) {
      report.max_violation = v;
      report.worst_step = static_cast<long>(i);
    }
    if (v > report.tolerance) ++report.violations;
  }
  if (trace.size() == 1) report.max_violation = 0.0;
  report.pass = report.violations == 0;
  return report;
}

MassReport mass_trace(std::span<const EnergyRecord> trace, bool forced, double tolerance) {
  MassReport report;
  report.exempt = forced;
  if (trace.empty()) return report;
  const double m0 = trace.front().mass;
  const double scale = std::max(std::abs(m0), 1e-300);
  for (const auto& r : trace) report.max_relative_drift = std::max(report.max_relative_drift, std::abs(r.mass - m0) / scale);
  if (m0 == 0.0) {
    // relative drift is meaningless for zero mass; fall back to absolute
    report.max_relative_drift = 0.0;
    for (const auto& r : trace) report.max_relative_drift = std::max(report.max_relative_drift, std::abs(r.mass));
  }
  report.pass = forced || report.max_relative_drift <= tolerance;
  return report;
}

double energy_part(const ScalarField& phi, const ModelParams& params, EnergyPart part) {
  const EnergyBreakdown e = original_energy(phi, params);
  switch (part) {
    case EnergyPart::Anisotropic:
      return e.aniso_part;
    case EnergyPart::Regularization:
      return e.reg_part;
    case EnergyPart::Total:
      return e.total;
  }
  return e.total;
}

ScalarField force_part(const ScalarField& phi, const ModelParams& params, EnergyPart part) {
  auto reg = [&] {
    return params.kind == Regularization::Linear ? linear_regularization_force(phi, params)
                                                 : willmore_force(phi, params);
  };
  switch (part) {
    case EnergyPart::Anisotropic:
      return variational_force(phi, params);
    case EnergyPart::Regularization:
      return reg();
    case EnergyPart::Total:
      return variational_force(phi, params) + reg();
  }
  return variational_force(phi, params);
}

VariationalReport variational_check(const ScalarField& phi, const ScalarField& psi, const ModelParams& params,
                                    std::span<const double> s_values, EnergyPart part) {
  VariationalReport report;
  report.analytic = integrate(force_part(phi, params, part) * psi);
  for (double s : s_values) {
    const double plus = energy_part(phi + s * psi, params, part);
    const double minus = energy_part(phi - s * psi, params, part);
    const double fd = (plus - minus) / (2.0 * s);
    report.samples.push_back({s, fd, std::abs(fd - report.analytic)});
  }
  for (std::size_t i = 0; i + 1 < report.samples.size(); ++i) {
    const auto& a = report.samples[i];
    const auto& b = report.samples[i + 1];
    report.observed_orders.push_back(std::log(a.mismatch / b.mismatch) / std::log(a.s / b.s));
  }
  return report;
}

OracleResult dense_oracle_step(const SavState& state, const StepperConfig& cfg, const ModelParams& params) {
  const Grid& grid = state.phi_n.grid();
  const std::size_t n = grid.size();
  if (n > 4096) throw std::invalid_argument("dense oracle is limited to grids of at most 4096 nodes");
  const double dt = solve_step(state, cfg.dt);
  const double inv_eps2 = 1.0 / (params.eps * params.eps);
  const ScalarField& phi_prev = state.step == 0 ? state.phi_n : state.phi_nm1;
  const double u_prev = state.step == 0 ? state.u_n : state.u_nm1;

  const ScalarField phi_star = 2.0 * state.phi_n - phi_prev;
  const ScalarField history = 4.0 * state.phi_n - phi_prev;
  ScalarField h = sav_field(phi_star, params).field;
  if (cfg.dealias) {
    Spectrum hh = forward(h);
    truncate_two_thirds(hh);
    h = inverse(hh);
  }
  const double g = (4.0 * state.u_n - u_prev) / 3.0 - 0.5 * integrate(h * history) / 3.0;

  // Right side assembled in real space.
  ScalarField inner = g * h - (params.s1 * inv_eps2) * phi_star + params.s2 * laplacian(phi_star) -
                      params.s3 * bilaplacian(phi_star);
  ScalarField rhs = (1.0 / (2.0 * params.m0 * dt)) * history + laplacian(inner);
  if (cfg.forcing) rhs += (1.0 / params.m0) * cfg.forcing(state.time + cfg.dt);

  // Columns of chi - (1/2) Lap H (H, .) from unit impulses.
  const OperatorSymbol chi = chi_coefficients(params, dt);
  const ScalarField lap_h = laplacian(h);
  const double w = grid.cell_volume();
  Eigen::MatrixXd a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    ScalarField impulse(grid);
    impulse[j] = 1.0;
    const ScalarField column = inverse(apply_symbol(forward(impulse), chi));
    const double coupling = 0.5 * w * h[j];
    for (std::size_t i = 0; i < n; ++i) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = column[i] - coupling * lap_h[i];
    }
  }
  const Eigen::Map<const Eigen::VectorXd> b(rhs.values().data(), static_cast<Eigen::Index>(n));
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  if (!(lu.rcond() > 1e-15)) throw std::runtime_error("dense oracle matrix is singular");
  const Eigen::VectorXd x = lu.solve(b);

  ScalarField phi(grid, std::vector<double>(x.data(), x.data() + x.size()));
  const double u = 0.5 * integrate(h * phi) + g;
  return {std::move(phi), u};
}

double l2_distance(const ScalarField& a, const ScalarField& b) {
  const ScalarField d = a - b;
  return std::sqrt(integrate(d * d));
}

double rms_distance(const ScalarField& a, const ScalarField& b) {
  return l2_distance(a, b) / std::sqrt(a.grid().domain_volume());
}

long steps_to(double t_final, double dt) {
  if (!(dt > 0.0) || !(t_final > 0.0)) throw std::invalid_argument("t_final and dt must be positive");
  const double ratio = t_final / dt;
  const long n = std::lround(ratio);
  if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-8 * ratio) {
    throw std::invalid_argument("dt = " + std::to_string(dt) + " does not divide t_final = " + std::to_string(t_final));
  }
  return n;
}

namespace {

ScalarField run_to(const ScalarField& phi0, const StepperConfig& cfg, const ModelParams& params, double t_final) {
  return run(phi0, cfg, params, steps_to(t_final, cfg.dt)).phi_n;
}

}  // namespace

std::vector<ConvergenceRow> convergence_study(const ConvergenceSetup& setup) {
  if (setup.dt_ladder.empty()) throw std::invalid_argument("empty time-step ladder");
  for (std::size_t i = 1; i < setup.dt_ladder.size(); ++i) {
    if (!(setup.dt_ladder[i] < setup.dt_ladder[i - 1])) throw std::invalid_argument("dt ladder must strictly decrease");
  }
  ScenarioSpec spec;
  spec.name = setup.scenario;
  spec.grid = setup.grid;
  spec.params = setup.params;
  const ScalarField phi0 = initial_condition(spec);

  StepperConfig cfg;
  cfg.scheme = setup.params.kind;
  ScalarField reference(setup.grid);
  if (setup.benchmark == Benchmark::Exact) {
    if (setup.scenario != Scenario::ExactTrig) {
      throw std::invalid_argument("the exact benchmark needs the exact_trig scenario");
    }
    const Grid grid = setup.grid;
    const ModelParams params = setup.params;
    cfg.forcing = [grid, params](double t) { return manufactured_forcing(t, grid, params); };
    reference = exact_solution(setup.t_final, setup.grid);
  } else {
    cfg.dt = setup.benchmark_dt;
    reference = run_to(phi0, cfg, setup.params, setup.t_final);
  }

  std::vector<ConvergenceRow> rows;
  for (double dt : setup.dt_ladder) {
    cfg.dt = dt;
    ConvergenceRow row;
    row.dt = dt;
    row.l2_error = l2_distance(run_to(phi0, cfg, setup.params, setup.t_final), reference);
    if (!rows.empty()) {
      const auto& prev = rows.back();
      row.observed_order = std::log(prev.l2_error / row.l2_error) / std::log(prev.dt / row.dt);
    }
    rows.push_back(row);
  }
  return rows;
}

double mean_tail_order(std::span<const ConvergenceRow> rows, std::size_t rungs) {
  std::vector<double> orders;
  for (const auto& r : rows) {
    if (r.observed_order) orders.push_back(*r.observed_order);
  }
  if (orders.empty()) return 0.0;
  const std::size_t take = std::min(rungs, orders.size());
  double sum = 0.0;
  for (std::size_t i = orders.size() - take; i < orders.size(); ++i) sum += orders[i];
  return sum / static_cast<double>(take);
}

}  // namespace savch
