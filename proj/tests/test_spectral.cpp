#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>

#include "savch/harness.hpp"
#include "savch/spectral.hpp"

using namespace savch;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ScalarField sample2(const Grid& g, double (*f)(double, double)) {
  return ScalarField::sample(g, [f](const std::array<double, 3>& x) { return f(x[0], x[1]); });
}

}  // namespace

TEST_CASE("grid rejects bad shapes") {
  CHECK_THROWS_AS(Grid(1, {8}), std::invalid_argument);
  CHECK_THROWS_AS(Grid(2, {8}), std::invalid_argument);
  CHECK_THROWS_AS(Grid(2, {8, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Grid(4, {4, 4, 4, 4}), std::invalid_argument);
}

TEST_CASE("grid sizes and wavenumber convention") {
  const Grid g(2, {8, 9});
  CHECK(g.size() == 72);
  CHECK(g.spectral_size() == 8 * 5);
  CHECK_THAT(g.domain_volume(), WithinRel(kTwoPi * kTwoPi, 1e-15));
  CHECK(wavenumber_of(0, 8) == 0);
  CHECK(wavenumber_of(3, 8) == 3);
  CHECK(wavenumber_of(4, 8) == -4);
  CHECK(wavenumber_of(4, 9) == 4);
  CHECK(wavenumber_of(5, 9) == -4);
  const Grid g3(3, {4, 6, 5});
  for (std::size_t i = 0; i < g3.size(); i += 7) CHECK(g3.flat_index(g3.node_indices(i)) == i);
}

TEST_CASE("transform round trip and constant normalisation") {
  for (const auto& g : {Grid(2, {16, 16}), Grid(2, {15, 17}), Grid(3, {8, 6, 7})}) {
    const ScalarField f = random_smooth_field(g, 11, 3);
    CHECK(max_abs_difference(inverse(forward(f)), f) < 1e-14);
    const Spectrum c = forward(ScalarField(g, 2.5));
    CHECK_THAT(c[0].real(), WithinAbs(2.5, 1e-15));
  }
}

TEST_CASE("derivatives of trigonometric fields") {
  const Grid g(2, {32, 32});
  const ScalarField f = sample2(g, [](double x, double y) { return std::sin(x) * std::cos(2 * y); });
  const ScalarField fx = sample2(g, [](double x, double y) { return std::cos(x) * std::cos(2 * y); });
  const ScalarField fy = sample2(g, [](double x, double y) { return -2 * std::sin(x) * std::sin(2 * y); });
  CHECK(max_abs_difference(derivative(f, 0), fx) < 1e-13);
  CHECK(max_abs_difference(derivative(f, 1), fy) < 1e-13);
  CHECK(max_abs_difference(laplacian(f), -5.0 * f) < 1e-12);
  CHECK(max_abs_difference(bilaplacian(f), 25.0 * f) < 1e-9);  // roundoff amplified by |k|^4
  CHECK_THROWS_AS(derivative(f, 2), std::out_of_range);
}

TEST_CASE("odd derivatives zero the Nyquist mode on even grids") {
  const Grid g(2, {8, 8});
  // cos(4x) lives entirely on the Nyquist mode of axis 0.
  const ScalarField f = sample2(g, [](double x, double) { return std::cos(4 * x); });
  CHECK(derivative(f, 0).max_abs() < 1e-14);
  CHECK(max_abs_difference(laplacian(f), -16.0 * f) < 1e-12);
}

TEST_CASE("derivative of a constant is exactly zero") {
  const Grid g(3, {6, 6, 6});
  const Spectrum d = derivative(forward(ScalarField(g, 3.0)), 1);
  for (std::size_t m = 0; m < d.size(); ++m) CHECK(d[m] == std::complex<double>{});
}

TEST_CASE("operators are linear") {
  const Grid g(2, {16, 12});
  const ScalarField a = random_smooth_field(g, 1, 4);
  const ScalarField b = random_smooth_field(g, 2, 4);
  const ScalarField lhs = laplacian(2.0 * a - 3.0 * b);
  const ScalarField rhs = 2.0 * laplacian(a) - 3.0 * laplacian(b);
  CHECK(max_abs_difference(lhs, rhs) < 1e-12);
  CHECK(max_abs_difference(derivative(a + b, 1), derivative(a, 1) + derivative(b, 1)) < 1e-13);
}

TEST_CASE("quadrature of known integrals") {
  const Grid g(2, {16, 16});
  CHECK_THAT(integrate(ScalarField(g, 1.0)), WithinRel(4 * kPi * kPi, 1e-15));
  const ScalarField s2 = sample2(g, [](double x, double) { return std::sin(x) * std::sin(x); });
  CHECK_THAT(integrate(s2), WithinRel(2 * kPi * kPi, 1e-14));
  const Grid g3(3, {8, 8, 8});
  CHECK_THAT(integrate(ScalarField(g3, 0.5)), WithinRel(0.5 * std::pow(kTwoPi, 3), 1e-15));
}

TEST_CASE("Parseval: spectral inner product equals the quadrature of the product") {
  for (const auto& g : {Grid(2, {16, 16}), Grid(2, {17, 13}), Grid(3, {8, 9, 10})}) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const ScalarField f = random_smooth_field(g, seed, 3);
      const ScalarField h = random_smooth_field(g, seed + 100, 3);
      const double direct = integrate(f * h);
      CHECK_THAT(inner_product(forward(f), forward(h)), WithinAbs(direct, 1e-10 * std::max(1.0, std::abs(direct))));
      const double grad2 = integrate(gradient(f).norm_squared());
      CHECK_THAT(gradient_norm_squared(forward(f)), WithinRel(grad2, 1e-10));
    }
  }
}

TEST_CASE("integral of a divergence vanishes") {
  for (const auto& g : {Grid(2, {16, 16}), Grid(3, {8, 8, 8})}) {
    VectorField v(g);
    for (int a = 0; a < g.dim(); ++a) v[a] = random_smooth_field(g, 40 + a, 5, 3.0);
    CHECK(std::abs(integrate(divergence(v))) < 1e-10);
  }
}

TEST_CASE("two-thirds truncation") {
  const Grid g(2, {12, 12});
  Spectrum s = forward(random_smooth_field(g, 3, 6));
  truncate_two_thirds(s);
  for (std::size_t m = 0; m < s.size(); ++m) {
    if (std::abs(g.wavenumbers(0)[m]) > 4 || std::abs(g.wavenumbers(1)[m]) > 4) CHECK(s[m] == std::complex<double>{});
  }
}

TEST_CASE("symbol examples") {
  const Grid g(2, {16, 16});
  const ScalarField f = random_smooth_field(g, 5, 4);
  CHECK(max_abs_difference(inverse(apply_symbol(forward(f), {1, 0, 0, 0})), f) < 1e-14);
  const ScalarField s = sample2(g, [](double x, double) { return std::sin(x); });
  CHECK(max_abs_difference(inverse(apply_symbol(forward(s), {1, 1, 0, 0})), 2.0 * s) < 1e-14);
  CHECK_THROWS_AS(solve_symbol(forward(f), {0.0, 1, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(solve_symbol(forward(f), {-1.0, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("solve inverts apply for positive symbols") {
  const Grid g(2, {24, 20});
  const Spectrum s = forward(random_smooth_field(g, 9, 8));
  for (const OperatorSymbol p : {OperatorSymbol{1e4, 555.6, 2, 6e-4}, OperatorSymbol{0.5, 0, 0, 1}}) {
    const Spectrum back = solve_symbol(apply_symbol(s, p), p);
    double worst = 0.0;
    for (std::size_t m = 0; m < s.size(); ++m) worst = std::max(worst, std::abs(back[m] - s[m]));
    CHECK(worst <= 1e-12 * std::abs(s[0]) + 1e-14);
  }
}

TEST_CASE("solve agrees with a dense solve of the assembled operator") {
  const Grid g(2, {8, 8});
  const OperatorSymbol p{3.0, 1.5, 0.2, 0.01};
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    ScalarField e(g);
    e[static_cast<std::size_t>(j)] = 1.0;
    const ScalarField col = inverse(apply_symbol(forward(e), p));
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = col[static_cast<std::size_t>(i)];
  }
  const ScalarField rhs = random_smooth_field(g, 21, 4);
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(rhs.values().data(), n);
  const Eigen::VectorXd x = a.partialPivLu().solve(b);
  const ScalarField fast = inverse(solve_symbol(forward(rhs), p));
  for (Eigen::Index i = 0; i < n; ++i) CHECK_THAT(fast[static_cast<std::size_t>(i)], WithinAbs(x(i), 1e-10));
}
