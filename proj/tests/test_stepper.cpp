#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "savch/harness.hpp"
#include "savch/spectral.hpp"
#include "savch/stepper.hpp"

using namespace savch;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ModelParams with_kind(Regularization kind) {
  ModelParams p;
  p.kind = kind;
  return p;
}

StepperConfig config(Regularization kind, double dt) {
  StepperConfig c;
  c.scheme = kind;
  c.dt = dt;
  return c;
}

ScalarField circle(int n) {
  ScenarioSpec spec = default_scenario(Scenario::Circle);
  spec.grid = Grid(2, {n, n});
  return initial_condition(spec);
}

}  // namespace

TEST_CASE("operator coefficients") {
  ModelParams p;
  const OperatorSymbol lin = chi_coefficients(p, 1e-3);
  CHECK_THAT(lin.c0, WithinRel(1500.0, 1e-15));
  CHECK_THAT(lin.c1, WithinRel(2.0 / 3.6e-3, 1e-15));
  CHECK(lin.c2 == 2.0);
  CHECK_THAT(lin.c3, WithinRel(1e-3 + 6e-4, 1e-15));
  p.kind = Regularization::Willmore;
  CHECK(chi_coefficients(p, 1e-3).c3 == 1e-3);
  CHECK_THROWS_AS(chi_coefficients(p, 0.0), std::invalid_argument);
}

TEST_CASE("bootstrap duplicates the initial level") {
  const ScalarField phi0 = circle(32);
  const ModelParams p;
  const SavState s = bootstrap(phi0, p);
  CHECK(max_abs_difference(s.phi_n, s.phi_nm1) == 0.0);
  CHECK(s.u_n == s.u_nm1);
  CHECK(s.u_n == u_initial(phi0, p));
  CHECK(s.step == 0);
  CHECK(solve_step(s, 1e-3) == 1.5e-3);
  SavState later = s;
  later.step = 3;
  CHECK(solve_step(later, 1e-3) == 1e-3);
}

TEST_CASE("input validation") {
  const ScalarField phi0 = circle(16);
  const ModelParams p;
  CHECK_THROWS_AS(run(phi0, config(Regularization::Linear, 1e-3), p, 0), std::invalid_argument);
  CHECK_THROWS_AS(run(phi0, config(Regularization::Willmore, 1e-3), p, 1), std::invalid_argument);
  CHECK_THROWS_AS(run(phi0, config(Regularization::Linear, -1e-3), p, 1), std::invalid_argument);
  StepperConfig forced = config(Regularization::Linear, 1e-3);
  forced.forcing = [](double) { return ScalarField(Grid(2, {8, 8})); };
  CHECK_THROWS_AS(run(phi0, forced, p, 1), StepError);
}

TEST_CASE("step errors carry the stage and index") {
  ModelParams bad;
  bad.alpha = 0.5;
  const Grid g(2, {16, 16});
  const SavState s{ScalarField(g, 0.0), ScalarField(g, 0.0), 1.0, 1.0, 4, 4e-3};
  try {
    step(s, config(Regularization::Linear, 1e-3), bad);
    FAIL("expected a StepError");
  } catch (const StepError& e) {
    CHECK(e.stage() == "sav_field");
    CHECK(e.step() == 5);
  }
}

TEST_CASE("constant fields are fixed points") {
  const Grid g(2, {16, 16});
  for (auto kind : {Regularization::Linear, Regularization::Willmore}) {
    const ScalarField phi0(g, 0.3);
    const ModelParams p = with_kind(kind);
    const SavState end = run(phi0, config(kind, 1e-3), p, 100);
    CHECK(max_abs_difference(end.phi_n, phi0) <= 1e-12);
    CHECK_THAT(end.u_n, WithinRel(u_initial(phi0, p), 1e-12));
    CHECK_THAT(end.time, WithinRel(0.1, 1e-14));
    CHECK(end.step == 100);
  }
}

TEST_CASE("mass, scalar denominator and dissipation along a run") {
  const ScalarField phi0 = 0.2 * ScalarField(Grid(2, {32, 32}), 1.0) + random_smooth_field(Grid(2, {32, 32}), 5, 4, 0.8);
  for (auto kind : {Regularization::Linear, Regularization::Willmore}) {
    for (double dt : {1e-4, 1e-2}) {
      const ModelParams p = with_kind(kind);
      const double m0 = phi0.mean();
      double worst_mass = 0.0;
      double min_den = 2.0;
      double min_diss = 1.0;
      run(phi0, config(kind, dt), p, 50, [&](const StepOutput& out) {
        worst_mass = std::max(worst_mass, std::abs(out.state.phi_n.mean() - m0) / std::abs(m0));
        min_den = std::min(min_den, out.scalar_denominator);
        min_diss = std::min(min_diss, out.dissipation);
        CHECK(out.mu.all_finite());
      });
      CHECK(worst_mass <= 1e-12);
      CHECK(min_den >= 1.0 - 1e-10);
      CHECK(min_diss >= 0.0);
    }
  }
}

TEST_CASE("runs are deterministic and resumable") {
  const ScalarField phi0 = circle(32);
  const ModelParams p;
  const StepperConfig c = config(Regularization::Linear, 1e-3);
  const SavState a = run(phi0, c, p, 10);
  const SavState b = run(phi0, c, p, 10);
  CHECK(max_abs_difference(a.phi_n, b.phi_n) == 0.0);
  CHECK(a.u_n == b.u_n);
  const SavState resumed = advance(run(phi0, c, p, 4), c, p, 6);
  CHECK(max_abs_difference(a.phi_n, resumed.phi_n) == 0.0);
  CHECK(a.u_n == resumed.u_n);
}

TEST_CASE("the first step is a backward Euler SAV step") {
  // A step-0 state reads only its current level, whatever the history holds.
  const ScalarField phi0 = circle(16);
  const ModelParams p;
  const StepperConfig c = config(Regularization::Linear, 1e-3);
  SavState s = bootstrap(phi0, p);
  s.phi_nm1 = random_smooth_field(phi0.grid(), 3, 3);
  s.u_nm1 = 99.0;
  const SavState first = step(s, c, p).state;
  const SavState clean = step(bootstrap(phi0, p), c, p).state;
  CHECK(max_abs_difference(first.phi_n, clean.phi_n) == 0.0);
  CHECK(first.u_n == clean.u_n);
  CHECK_THAT(first.time, WithinRel(1e-3, 1e-15));
}
