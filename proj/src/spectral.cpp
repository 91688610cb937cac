#include "savch/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "grid_impl.hpp"

namespace savch {

Spectrum forward(const ScalarField& field) {
  if (!field.all_finite()) throw std::invalid_argument("forward transform of a non-finite field");
  const Grid& g = field.grid();
  Spectrum out(g);
  std::vector<double> in(field.values().begin(), field.values().end());
  fftw_execute_dft_r2c(g.impl().r2c, in.data(), reinterpret_cast<fftw_complex*>(out.modes().data()));
  out *= 1.0 / static_cast<double>(g.size());
  return out;
}

ScalarField inverse(const Spectrum& spectrum) {
  const Grid& g = spectrum.grid();
  // c2r overwrites its input.
  std::vector<std::complex<double>> in(spectrum.modes().begin(), spectrum.modes().end());
  ScalarField out(g);
  fftw_execute_dft_c2r(g.impl().c2r, reinterpret_cast<fftw_complex*>(in.data()), out.values().data());
  return out;
}

Spectrum derivative(const Spectrum& s, int axis) {
  const Grid& g = s.grid();
  const auto k = g.wavenumbers(axis);
  const auto nyq = g.nyquist(axis);
  Spectrum out(g);
  for (std::size_t m = 0; m < s.size(); ++m) {
    out[m] = nyq[m] ? std::complex<double>{} : std::complex<double>(0.0, k[m]) * s[m];
  }
  return out;
}

Spectrum laplacian(const Spectrum& s) {
  const auto k2 = s.grid().wavenumber_squared();
  Spectrum out(s.grid());
  for (std::size_t m = 0; m < s.size(); ++m) out[m] = -k2[m] * s[m];
  return out;
}

Spectrum bilaplacian(const Spectrum& s) {
  const auto k2 = s.grid().wavenumber_squared();
  Spectrum out(s.grid());
  for (std::size_t m = 0; m < s.size(); ++m) out[m] = (k2[m] * k2[m]) * s[m];
  return out;
}

ScalarField derivative(const ScalarField& field, int axis) {
  if (axis < 0 || axis >= field.grid().dim()) {
    throw std::out_of_range("derivative axis " + std::to_string(axis) + " out of range");
  }
  return inverse(derivative(forward(field), axis));
}

ScalarField laplacian(const ScalarField& field) { return inverse(laplacian(forward(field))); }

ScalarField bilaplacian(const ScalarField& field) { return inverse(bilaplacian(forward(field))); }

VectorField gradient(const ScalarField& field) {
  const Spectrum s = forward(field);
  std::vector<ScalarField> comps;
  for (int a = 0; a < field.grid().dim(); ++a) comps.push_back(inverse(derivative(s, a)));
  return VectorField(std::move(comps));
}

ScalarField divergence(const VectorField& v) {
  Spectrum acc(v.grid());
  for (int a = 0; a < v.dim(); ++a) acc += derivative(forward(v[a]), a);
  return inverse(acc);
}

double integrate(const ScalarField& field) { return field.mean() * field.grid().domain_volume(); }

double inner_product(const Spectrum& a, const Spectrum& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("spectra live on different grids");
  const auto w = a.grid().mode_weight();
  double acc = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) acc += w[m] * (a[m].real() * b[m].real() + a[m].imag() * b[m].imag());
  return acc * a.grid().domain_volume();
}

double gradient_norm_squared(const Spectrum& s) {
  const auto w = s.grid().mode_weight();
  const auto k2 = s.grid().wavenumber_squared();
  double acc = 0.0;
  for (std::size_t m = 0; m < s.size(); ++m) acc += w[m] * k2[m] * std::norm(s[m]);
  return acc * s.grid().domain_volume();
}

void truncate_two_thirds(Spectrum& s) {
  const Grid& g = s.grid();
  for (int a = 0; a < g.dim(); ++a) {
    const auto k = g.wavenumbers(a);
    const double cutoff = g.points(a) / 3.0;
    for (std::size_t m = 0; m < s.size(); ++m) {
      if (std::abs(k[m]) > cutoff) s[m] = 0.0;
    }
  }
}

Spectrum apply_symbol(const Spectrum& s, const OperatorSymbol& p) {
  const auto k2 = s.grid().wavenumber_squared();
  Spectrum out(s.grid());
  for (std::size_t m = 0; m < s.size(); ++m) out[m] = p(k2[m]) * s[m];
  return out;
}

Spectrum solve_symbol(const Spectrum& s, const OperatorSymbol& p) {
  if (!(p.c0 > 0.0) || p.c1 < 0.0 || p.c2 < 0.0 || p.c3 < 0.0) {
    throw std::invalid_argument("operator symbol is not strictly positive (need c0 > 0, c1..c3 >= 0)");
  }
  const auto k2 = s.grid().wavenumber_squared();
  Spectrum out(s.grid());
  for (std::size_t m = 0; m < s.size(); ++m) out[m] = s[m] / p(k2[m]);
  return out;
}

}  // namespace savch
