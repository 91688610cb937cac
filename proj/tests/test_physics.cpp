#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "savch/diagnostics.hpp"
#include "savch/harness.hpp"
#include "savch/physics.hpp"
#include "savch/spectral.hpp"

using namespace savch;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ModelParams with_kind(Regularization kind) {
  ModelParams p;
  p.kind = kind;
  return p;
}

// Unit vectors spread over the circle or sphere, one per node.
VectorField sampled_normals(const Grid& g, std::uint64_t seed) {
  VectorField n(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double norm2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      n[a][i] = counter_uniform(seed, i * 3 + static_cast<std::uint64_t>(a));
      norm2 += n[a][i] * n[a][i];
    }
    for (int a = 0; a < g.dim(); ++a) n[a][i] /= std::sqrt(norm2);
  }
  return n;
}

}  // namespace

TEST_CASE("parameter validation") {
  ModelParams p;
  CHECK_NOTHROW(p.validate());
  p.alpha = -0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ModelParams{};
  p.eps = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ModelParams{};
  p.b = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  CHECK(parse_regularization("willmore") == Regularization::Willmore);
  CHECK_THROWS_AS(parse_regularization("cubic"), std::invalid_argument);
}

TEST_CASE("double well values") {
  const Grid g(2, {4, 4});
  ScalarField phi(g);
  phi[0] = 1.0;
  phi[1] = -1.0;
  phi[2] = 0.0;
  phi[3] = 2.0;
  const DoubleWell w = double_well(phi);
  CHECK(w.F[0] == 0.0);
  CHECK(w.f[1] == 0.0);
  CHECK(w.F[2] == 0.25);
  CHECK(w.fprime[2] == -1.0);
  CHECK(w.F[3] == 2.25);
  CHECK(w.f[3] == 6.0);
  CHECK(w.fprime[3] == 11.0);
}

TEST_CASE("unit normal") {
  const Grid g(2, {4, 4});
  VectorField grad(g);
  grad[0] = ScalarField(g, 3.0);
  grad[1] = ScalarField(g, 4.0);
  const VectorField n = unit_normal(grad, 0.0);
  CHECK_THAT(n[0][0], WithinAbs(0.6, 1e-15));
  CHECK_THAT(n[1][0], WithinAbs(0.8, 1e-15));
  grad[0][1] = 0.0;
  grad[1][1] = 0.0;
  CHECK_THROWS_AS(unit_normal(grad, 0.0), std::domain_error);
  const VectorField soft = unit_normal(grad, 1e-6);
  CHECK(soft[0][1] == 0.0);
  CHECK(soft.norm_squared().max_abs() <= 1.0);
  CHECK_THROWS_AS(unit_normal(grad, -1.0), std::invalid_argument);
}

TEST_CASE("gamma examples") {
  const Grid g(2, {4, 4});
  VectorField n(g);
  n[0] = ScalarField(g, 1.0);
  CHECK_THAT(gamma(n, 0.3)[0], WithinAbs(1.3, 1e-15));
  n[0] = ScalarField(g, std::sqrt(0.5));
  n[1] = ScalarField(g, std::sqrt(0.5));
  CHECK_THAT(gamma(n, 0.3)[0], WithinAbs(0.7, 1e-15));
  CHECK_THAT(gamma(n, 0.0)[5], WithinAbs(1.0, 1e-15));
}

TEST_CASE("gamma stays within its bounds on unit normals") {
  const double alpha = 0.3;
  const Grid g2(2, {32, 32});
  const ScalarField gam2 = gamma(sampled_normals(g2, 3), alpha);
  for (double v : gam2.values()) {
    CHECK(v >= 1.0 - alpha - 1e-12);
    CHECK(v <= 1.0 + alpha + 1e-12);
  }
  const Grid g3(3, {12, 12, 12});
  const ScalarField gam3 = gamma(sampled_normals(g3, 4), alpha);
  for (double v : gam3.values()) {
    CHECK(v >= 1.0 - 5.0 * alpha / 3.0 - 1e-12);
    CHECK(v <= 1.0 + alpha + 1e-12);
  }
  VectorField diag(g3);
  for (int a = 0; a < 3; ++a) diag[a] = ScalarField(g3, 1.0 / std::sqrt(3.0));
  CHECK_THAT(gamma(diag, alpha)[0], WithinAbs(1.0 - 5.0 * alpha / 3.0, 1e-14));
}

TEST_CASE("gamma gradient matches finite differences") {
  const double alpha = 0.3;
  const double h = 1e-5;
  for (const auto& g : {Grid(2, {8, 8}), Grid(3, {4, 4, 4})}) {
    const VectorField n = sampled_normals(g, 9);
    const VectorField grad = gamma_n_gradient(n, alpha);
    for (int a = 0; a < g.dim(); ++a) {
      VectorField up = n;
      VectorField down = n;
      up[a] += ScalarField(g, h);
      down[a] -= ScalarField(g, h);
      const ScalarField fd = (1.0 / (2.0 * h)) * (gamma(up, alpha) - gamma(down, alpha));
      CHECK(max_abs_difference(fd, grad[a]) < 1e-8);
    }
  }
}

TEST_CASE("isotropic model reduces to the classical chemical potential") {
  ModelParams p;
  p.alpha = 0.0;
  const Grid g(2, {32, 32});
  const ScalarField phi = random_smooth_field(g, 17, 3);
  ScalarField expected = (1.0 / (p.eps * p.eps)) * double_well(phi).f - laplacian(phi);
  CHECK(max_abs_difference(variational_force(phi, p), expected) <= 1e-10 * expected.max_abs());
  const VectorField m = m_field(phi, p);
  const VectorField grad = gradient(phi);
  for (int a = 0; a < 2; ++a) CHECK(max_abs_difference(m[a], grad[a]) < 1e-12);
}

TEST_CASE("pure phases carry no force") {
  const Grid g(2, {16, 16});
  for (double v : {1.0, -1.0}) {
    const ScalarField phi(g, v);
    const ModelParams p = with_kind(Regularization::Willmore);
    CHECK(variational_force(phi, p).max_abs() == 0.0);
    CHECK(willmore_force(phi, p).max_abs() == 0.0);
    CHECK(original_energy(phi, p).total == 0.0);
    CHECK(m_field(phi, p).norm_squared().max_abs() == 0.0);
  }
  ModelParams flat;
  flat.beta = 0.0;
  const ScalarField phi = random_smooth_field(g, 2, 3);
  CHECK(willmore_force(phi, flat).max_abs() == 0.0);
  CHECK(linear_regularization_force(phi, flat).max_abs() == 0.0);
}

TEST_CASE("energy quadrature oracle for phi = sin x") {
  // gamma(n) with n = (cos x, 0) / sqrt(cos^2 x + delta^2); evaluated independently on a fine grid.
  ModelParams p;
  const Grid g(2, {64, 4});
  const ScalarField phi = ScalarField::sample(g, [](const std::array<double, 3>& x) { return std::sin(x[0]); });
  const int samples = 200000;
  double aniso = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = kTwoPi * i / samples;
    const double c = std::cos(x);
    const double s = std::sin(x);
    const double nx = c / std::sqrt(c * c + p.delta_n * p.delta_n);
    const double gam = 1.0 + p.alpha * (4.0 * nx * nx * nx * nx - 3.0);
    const double well = 0.25 * (s * s - 1.0) * (s * s - 1.0);
    aniso += gam * (0.5 * c * c + well / (p.eps * p.eps));
  }
  aniso *= kTwoPi * kTwoPi / samples;
  const EnergyBreakdown e = original_energy(phi, p);
  CHECK_THAT(e.aniso_part, WithinRel(aniso, 1e-10));
  // Linear regularisation: (beta/2) int (Lap sin x)^2 = (beta/2) 2 pi^2.
  CHECK_THAT(e.reg_part, WithinRel(p.beta * kPi * kPi, 1e-12));
  CHECK(e.total == e.aniso_part + e.reg_part);
}

TEST_CASE("SAV field is consistent with the energy") {
  const Grid g(2, {32, 32});
  const ScalarField phi = random_smooth_field(g, 8, 3);
  for (auto kind : {Regularization::Linear, Regularization::Willmore}) {
    const ModelParams p = with_kind(kind);
    const double u = u_initial(phi, p);
    const EnergyBreakdown e = original_energy(phi, p);
    const double nonlinear = kind == Regularization::Linear ? e.aniso_part : e.total;
    CHECK_THAT(u * u - p.b, WithinAbs(nonlinear, 1e-10 * std::max(1.0, std::abs(nonlinear))));
    // field * sqrt(radicand) is the nonlinear chemical potential.
    const SavField h = sav_field(phi, p);
    ScalarField mu = variational_force(phi, p);
    if (kind == Regularization::Willmore) mu += willmore_force(phi, p);
    CHECK(max_abs_difference(std::sqrt(h.radicand) * h.field, mu) <= 1e-12 * mu.max_abs());
  }
}

TEST_CASE("auxiliary variable examples") {
  const Grid g(2, {16, 16});
  ModelParams p;
  CHECK(u_initial(ScalarField(g, 1.0), p) == 1.0);
  const ScalarField phi = random_smooth_field(g, 4, 2);
  double last = 0.0;
  for (double b : {0.5, 1.0, 2.0, 10.0}) {
    p.b = b;
    const double u = u_initial(phi, p);
    CHECK(u >= last);
    last = u;
  }
  // gamma = 1 - 3 alpha < 0 in a flat region with F > 0 drives the radicand negative.
  ModelParams bad;
  bad.alpha = 0.5;
  CHECK_THROWS_AS(sav_field(ScalarField(g, 0.0), bad), std::runtime_error);
}

TEST_CASE("frozen circle energy and auxiliary variable") {
  const double tol = 1e-10;
  for (int n : {128, 129}) {
    ScenarioSpec spec = default_scenario(Scenario::Circle);
    spec.grid = Grid(2, {n, n});
    const ScalarField phi = initial_condition(spec);
    const ModelParams lin = with_kind(Regularization::Linear);
    const ModelParams wil = with_kind(Regularization::Willmore);
    const EnergyBreakdown e = original_energy(phi, lin);
    if (n == 128) {
      CHECK_THAT(e.aniso_part, WithinRel(174.66213435556111, tol));
      CHECK_THAT(e.reg_part, WithinRel(1.9903805065014077, tol));
      CHECK_THAT(u_initial(phi, lin), WithinRel(13.25375925371972, tol));
      CHECK_THAT(u_initial(phi, wil), WithinRel(13.328635265609579, tol));
    } else {
      CHECK_THAT(e.aniso_part, WithinRel(174.66213485649939, tol));
      CHECK_THAT(e.reg_part, WithinRel(1.9903798048125607, tol));
      CHECK_THAT(u_initial(phi, lin), WithinRel(13.253759272617689, tol));
      CHECK_THAT(u_initial(phi, wil), WithinRel(13.328635163223568, tol));
    }
  }
}

TEST_CASE("forces are variational derivatives of their energies") {
  const Grid g(2, {32, 32});
  const std::vector<double> s = {1e-3, 1e-4};
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const ScalarField phi = random_smooth_field(g, seed, 3);
    const ScalarField psi = random_smooth_field(g, seed + 50, 3);
    const ModelParams lin = with_kind(Regularization::Linear);
    const ModelParams wil = with_kind(Regularization::Willmore);
    for (const auto& [p, part] : {std::pair{lin, EnergyPart::Anisotropic}, std::pair{wil, EnergyPart::Anisotropic},
                                  std::pair{wil, EnergyPart::Regularization}}) {
      const VariationalReport r = variational_check(phi, psi, p, s, part);
      REQUIRE(r.observed_orders.size() == 1);
      CHECK(r.observed_orders[0] >= 1.9);
    }
    // The linear regularisation is quadratic, so the centred difference is exact.
    const VariationalReport q = variational_check(phi, psi, lin, s, EnergyPart::Regularization);
    for (const auto& sample : q.samples) CHECK(sample.mismatch <= 1e-9 * std::max(1.0, std::abs(q.analytic)));
  }
}
