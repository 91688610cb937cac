#include "savch/experiments.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "savch/spectral.hpp"

namespace savch {

namespace {

struct NamedScenario {
  Scenario id;
  std::string_view name;
  int dim;
};

constexpr NamedScenario kScenarios[] = {
    {Scenario::ExactTrig, "exact_trig", 2}, {Scenario::Circle, "circle", 2},
    {Scenario::TwoCircles, "two_circles", 2}, {Scenario::Spinodal2d, "spinodal2d", 2},
    {Scenario::Sphere, "sphere", 3},        {Scenario::TwoSpheres, "two_spheres", 3},
    {Scenario::Spinodal3d, "spinodal3d", 3}, {Scenario::Constant, "constant", 2},
};

double tanh_bump(double r, double radius, double width) { return -std::tanh((r - radius) / width); }

// Two tanh profiles summed and shifted by +1, so the exterior sits near -1.
double two_bumps(const std::array<double, 3>& x, int dim, double width) {
  const double centres[2][3] = {{kPi - 0.7, kPi - 0.6, kPi}, {kPi + 1.65, kPi + 1.6, kPi}};
  const double radii[2] = {1.5, 0.7};
  double v = 1.0;
  for (int i = 0; i < 2; ++i) {
    double r2 = 0.0;
    for (int a = 0; a < dim; ++a) r2 += (x[a] - centres[i][a]) * (x[a] - centres[i][a]);
    v += tanh_bump(std::sqrt(r2), radii[i], width);
  }
  return v;
}

}  // namespace

std::string_view to_string(Scenario s) noexcept {
  for (const auto& n : kScenarios) {
    if (n.id == s) return n.name;
  }
  return "unknown";
}

Scenario parse_scenario(std::string_view name) {
  for (const auto& n : kScenarios) {
    if (n.name == name) return n.id;
  }
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

int scenario_dim(Scenario s) noexcept {
  for (const auto& n : kScenarios) {
    if (n.id == s) return n.dim;
  }
  return 2;
}

ScenarioSpec default_scenario(Scenario s) {
  ScenarioSpec spec;
  spec.name = s;
  spec.grid = scenario_dim(s) == 3 ? Grid(3, {64, 64, 64}) : Grid(2, {128, 128});
  if (s == Scenario::ExactTrig) {
    spec.grid = Grid(2, {64, 64});
    spec.params.alpha = 0.0;
    spec.params.m0 = spec.params.eps * spec.params.eps;
    spec.dt = 1e-3;
    spec.t_final = 0.1;
  }
  return spec;
}

double counter_uniform(std::uint64_t seed, std::uint64_t index) noexcept {
  // splitmix64 finaliser applied to a (seed, index) counter
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ull + index + 0x632BE59BD9B4E019ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  const double unit = static_cast<double>(z >> 11) * 0x1.0p-53;  // [0, 1)
  return 2.0 * unit - 1.0;
}

ScalarField initial_condition(const ScenarioSpec& spec) {
  const Grid& grid = spec.grid;
  const int dim = scenario_dim(spec.name);
  if (grid.dim() != dim) {
    throw std::invalid_argument("scenario " + std::string(to_string(spec.name)) + " needs a " +
                                std::to_string(dim) + "D grid");
  }
  const double eps = spec.params.eps;
  switch (spec.name) {
    case Scenario::ExactTrig:
      return exact_solution(0.0, grid);
    case Scenario::Circle:
    case Scenario::Sphere:
      return ScalarField::sample(grid, [&](const std::array<double, 3>& x) {
        double r2 = 0.0;
        for (int a = 0; a < dim; ++a) r2 += (x[a] - kPi) * (x[a] - kPi);
        return tanh_bump(std::sqrt(r2), 1.7, 2.0 * eps);
      });
    case Scenario::TwoCircles:
    case Scenario::TwoSpheres:
      return ScalarField::sample(grid, [&](const std::array<double, 3>& x) { return two_bumps(x, dim, 1.2 * eps); });
    case Scenario::Spinodal2d:
    case Scenario::Spinodal3d: {
      ScalarField out(grid);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = -0.4 + 0.001 * counter_uniform(spec.seed, i);
      return out;
    }
    case Scenario::Constant:
      return ScalarField(grid, spec.constant_value);
  }
  throw std::invalid_argument("unhandled scenario");
}

ScalarField exact_solution(double t, const Grid& grid) {
  if (grid.dim() != 2) throw std::invalid_argument("the manufactured solution is defined on 2D grids only");
  const double ct = std::cos(t);
  return ScalarField::sample(grid, [ct](const std::array<double, 3>& x) { return std::sin(x[0]) * std::cos(x[1]) * ct; });
}

ScalarField manufactured_forcing_for(const ScalarField& phi_e, const ScalarField& dphi_dt, const ModelParams& params) {
  if (params.alpha != 0.0) throw std::invalid_argument("manufactured forcing is defined for the isotropic model (alpha = 0)");
  // With alpha = 0, gamma = 1 and m = grad phi, so the anisotropic force is f/eps^2 - Lap phi.
  const DoubleWell well = double_well(phi_e);
  ScalarField mu = (1.0 / (params.eps * params.eps)) * well.f - laplacian(phi_e);
  if (params.kind == Regularization::Linear) {
    mu += linear_regularization_force(phi_e, params);
  } else {
    mu += willmore_force(phi_e, params);
  }
  return dphi_dt - params.m0 * laplacian(mu);
}

ScalarField manufactured_forcing(double t, const Grid& grid, const ModelParams& params) {
  const ScalarField phi_e = exact_solution(t, grid);
  const double st = std::sin(t);
  const ScalarField dphi_dt =
      ScalarField::sample(grid, [st](const std::array<double, 3>& x) { return -std::sin(x[0]) * std::cos(x[1]) * st; });
  return manufactured_forcing_for(phi_e, dphi_dt, params);
}

}  // namespace savch
