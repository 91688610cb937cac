#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace savch {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Periodic uniform grid on [0, 2*pi]^dim.
///
/// Real samples are stored row-major with axis 0 varying slowest. Fourier
/// coefficients use the real-to-complex half layout: every axis is complete
/// except the last, which keeps indices 0..N/2. The wave table attached to the
/// grid maps each stored mode to its integer wavevector, with the symmetric
/// convention k in [-floor(N/2), ceil(N/2) - 1] on the complete axes.
///
/// Grids are cheap to copy; copies share the wave table and the FFT plans.
class Grid {
 public:
  Grid(int dim, std::vector<int> points_per_axis);

  int dim() const noexcept { return dim_; }
  int points(int axis) const;
  const std::vector<int>& points_per_axis() const noexcept;
  std::size_t size() const noexcept;
  std::size_t spectral_size() const noexcept;
  double spacing(int axis) const;
  double cell_volume() const noexcept;
  double domain_volume() const noexcept;

  /// Coordinates of real-space node `index`; unused trailing entries are 0.
  std::array<double, 3> node(std::size_t index) const;
  std::array<int, 3> node_indices(std::size_t index) const;
  std::size_t flat_index(std::array<int, 3> indices) const;

  // Wave table, one entry per stored spectral mode.
  std::span<const double> wavenumbers(int axis) const;
  std::span<const double> wavenumber_squared() const;
  /// True where the mode sits on the Nyquist index of `axis` (even N only).
  std::span<const unsigned char> nyquist(int axis) const;
  /// Half-layout multiplicity: 1 for self-conjugate last-axis slices, 2 otherwise.
  std::span<const double> mode_weight() const;
  /// Stored index of the integer wavevector k, or -1 when only its conjugate
  /// is stored (negative last component) or it is outside the grid.
  std::ptrdiff_t mode_index(std::array<int, 3> k) const;

  bool operator==(const Grid& other) const noexcept;

  struct Impl;
  const Impl& impl() const noexcept { return *impl_; }

 private:
  int dim_;
  std::shared_ptr<const Impl> impl_;
};

/// Integer wavenumber carried by storage index `i` on an axis of N points.
constexpr int wavenumber_of(int i, int n) noexcept { return i < (n + 1) / 2 ? i : i - n; }

}  // namespace savch
