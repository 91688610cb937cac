#pragma once

#include <cstdint>
#include <string_view>

#include "savch/field.hpp"
#include "savch/physics.hpp"

namespace savch {

enum class Scenario {
  ExactTrig,
  Circle,
  TwoCircles,
  Spinodal2d,
  Sphere,
  TwoSpheres,
  Spinodal3d,
  Constant,
};

std::string_view to_string(Scenario s) noexcept;
Scenario parse_scenario(std::string_view name);
int scenario_dim(Scenario s) noexcept;

struct ScenarioSpec {
  Scenario name = Scenario::Circle;
  Grid grid{2, {128, 128}};
  ModelParams params;
  double dt = 1e-4;
  double t_final = 1e-2;
  std::uint64_t seed = 1;
  double constant_value = 0.0;  // used by Scenario::Constant only
};

/// Reference configuration for a scenario: 128^2 in 2D, 64^3 in 3D, default
/// model parameters; the manufactured test uses alpha = 0 and M0 = eps^2.
ScenarioSpec default_scenario(Scenario s);

ScalarField initial_condition(const ScenarioSpec& spec);

/// sin(x) cos(y) cos(t) on a 2D grid.
ScalarField exact_solution(double t, const Grid& grid);

/// Source S = d/dt phi_e - M0 Lap mu(phi_e) that makes exact_solution solve the
/// isotropic model with the regularisation selected by params.kind.
ScalarField manufactured_forcing(double t, const Grid& grid, const ModelParams& params);

/// Same construction for an arbitrary field standing in for phi_e with a
/// given time derivative; exposed for equilibrium checks.
ScalarField manufactured_forcing_for(const ScalarField& phi_e, const ScalarField& dphi_dt, const ModelParams& params);

/// Uniform value in [-1, 1] from a counter-based hash of (seed, index).
double counter_uniform(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace savch
