#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "savch/grid.hpp"

namespace savch {

/// Real samples of one scalar unknown at the grid nodes.
class ScalarField {
 public:
  explicit ScalarField(Grid grid);
  ScalarField(Grid grid, std::vector<double> values);
  ScalarField(Grid grid, double constant);

  /// Samples f(x) at every node; x holds dim coordinates (trailing entries 0).
  static ScalarField sample(const Grid& grid, const std::function<double(const std::array<double, 3>&)>& f);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }

  bool all_finite() const noexcept;
  double max_abs() const noexcept;
  double mean() const noexcept;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(const ScalarField& other);
  ScalarField& operator*=(double s) noexcept;
  ScalarField& operator+=(double s) noexcept;

 private:
  Grid grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
ScalarField operator*(ScalarField a, double s);
ScalarField operator-(ScalarField a);

/// Largest pointwise |a - b|.
double max_abs_difference(const ScalarField& a, const ScalarField& b);

struct VectorField {
  explicit VectorField(const Grid& grid);
  explicit VectorField(std::vector<ScalarField> components);

  const Grid& grid() const noexcept { return components.front().grid(); }
  int dim() const noexcept { return static_cast<int>(components.size()); }
  ScalarField& operator[](int axis) { return components.at(static_cast<std::size_t>(axis)); }
  const ScalarField& operator[](int axis) const { return components.at(static_cast<std::size_t>(axis)); }

  /// Pointwise Euclidean norm squared.
  ScalarField norm_squared() const;

  std::vector<ScalarField> components;
};

/// Fourier coefficients in the grid's half layout, normalised so that a
/// constant field c has coefficient c at k = 0.
class Spectrum {
 public:
  explicit Spectrum(Grid grid);
  Spectrum(Grid grid, std::vector<std::complex<double>> modes);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return modes_.size(); }
  std::span<const std::complex<double>> modes() const noexcept { return modes_; }
  std::span<std::complex<double>> modes() noexcept { return modes_; }
  std::complex<double> operator[](std::size_t i) const noexcept { return modes_[i]; }
  std::complex<double>& operator[](std::size_t i) noexcept { return modes_[i]; }

  /// Coefficient of integer wavevector k (conjugate-reflected when only -k is stored).
  std::complex<double> mode(std::array<int, 3> k) const;

  Spectrum& operator+=(const Spectrum& other);
  Spectrum& operator-=(const Spectrum& other);
  Spectrum& operator*=(double s) noexcept;

 private:
  Grid grid_;
  std::vector<std::complex<double>> modes_;
};

Spectrum operator+(Spectrum a, const Spectrum& b);
Spectrum operator-(Spectrum a, const Spectrum& b);
Spectrum operator*(double s, Spectrum a);

}  // namespace savch
