#pragma once

#include "savch/field.hpp"

namespace savch {

Spectrum forward(const ScalarField& field);
ScalarField inverse(const Spectrum& spectrum);

// Spectral differential operators. Odd-order derivatives zero the Nyquist
// mode of the differentiated axis on even grids.
Spectrum derivative(const Spectrum& s, int axis);
Spectrum laplacian(const Spectrum& s);
Spectrum bilaplacian(const Spectrum& s);

ScalarField derivative(const ScalarField& field, int axis);
ScalarField laplacian(const ScalarField& field);
ScalarField bilaplacian(const ScalarField& field);
VectorField gradient(const ScalarField& field);
ScalarField divergence(const VectorField& v);

/// Trapezoid rule over the periodic box: mean(values) * (2*pi)^dim.
double integrate(const ScalarField& field);

/// L2 inner product of the real fields behind two spectra (Parseval).
double inner_product(const Spectrum& a, const Spectrum& b);
/// ||grad f||^2 evaluated as sum |k|^2 |f_k|^2, consistent with laplacian().
double gradient_norm_squared(const Spectrum& s);

/// Zeroes every mode with |k_a| > N_a / 3 on some axis.
void truncate_two_thirds(Spectrum& s);

/// Even-order constant-coefficient operator c0 - c1*Lap + c2*Lap^2 - c3*Lap^3,
/// whose Fourier symbol is c0 + c1|k|^2 + c2|k|^4 + c3|k|^6.
struct OperatorSymbol {
  double c0 = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  double operator()(double k2) const noexcept { return c0 + k2 * (c1 + k2 * (c2 + k2 * c3)); }
};

Spectrum apply_symbol(const Spectrum& s, const OperatorSymbol& p);
/// Inverts apply_symbol; requires c0 > 0 and c1, c2, c3 >= 0.
Spectrum solve_symbol(const Spectrum& s, const OperatorSymbol& p);

}  // namespace savch
