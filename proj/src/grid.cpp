#include "savch/grid.hpp"

#include <mutex>
#include <stdexcept>
#include <string>

#include "grid_impl.hpp"

namespace savch {

namespace {

// FFTW planning is not thread safe; execution of existing plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

Grid::Impl::Impl(int dim, std::vector<int> pts) : points(std::move(pts)) {
  spectral_shape = points;
  spectral_shape.back() = points.back() / 2 + 1;
  for (int n : points) size *= static_cast<std::size_t>(n);
  for (int n : spectral_shape) spectral_size *= static_cast<std::size_t>(n);

  for (int a = 0; a < dim; ++a) {
    k[a].resize(spectral_size);
    nyquist[a].resize(spectral_size);
  }
  k2.resize(spectral_size);
  weight.resize(spectral_size);

  const int last = dim - 1;
  const int n_last = points[last];
  for (std::size_t m = 0; m < spectral_size; ++m) {
    std::size_t rem = m;
    std::array<int, 3> idx{};
    for (int a = dim - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(rem % spectral_shape[a]);
      rem /= spectral_shape[a];
    }
    double kk = 0.0;
    for (int a = 0; a < dim; ++a) {
      const int n = points[a];
      const int ka = (a == last) ? idx[a] : wavenumber_of(idx[a], n);
      k[a][m] = ka;
      nyquist[a][m] = (n % 2 == 0 && (ka == n / 2 || ka == -n / 2)) ? 1 : 0;
      kk += static_cast<double>(ka) * ka;
    }
    k2[m] = kk;
    const bool self_conjugate =
        idx[last] == 0 || (n_last % 2 == 0 && idx[last] == n_last / 2);
    weight[m] = self_conjugate ? 1.0 : 2.0;
  }

  std::vector<double> real(size);
  std::vector<fftw_complex> cplx(spectral_size);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard<std::mutex> lock(planner_mutex());
  r2c = fftw_plan_dft_r2c(dim, points.data(), real.data(), cplx.data(), flags);
  c2r = fftw_plan_dft_c2r(dim, points.data(), cplx.data(), real.data(), flags);
  if (r2c == nullptr || c2r == nullptr) throw std::runtime_error("FFTW planning failed");
}

Grid::Impl::~Impl() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (r2c != nullptr) fftw_destroy_plan(r2c);
  if (c2r != nullptr) fftw_destroy_plan(c2r);
}

Grid::Grid(int dim, std::vector<int> points_per_axis) : dim_(dim) {
  if (dim != 2 && dim != 3) {
    throw std::invalid_argument("grid dimension must be 2 or 3, got " + std::to_string(dim));
  }
  if (points_per_axis.size() != static_cast<std::size_t>(dim)) {
    throw std::invalid_argument("expected " + std::to_string(dim) + " axis sizes, got " +
                                std::to_string(points_per_axis.size()));
  }
  for (int n : points_per_axis) {
    if (n < 4) throw std::invalid_argument("each axis needs at least 4 points, got " + std::to_string(n));
  }
  impl_ = std::make_shared<const Impl>(dim, std::move(points_per_axis));
}

int Grid::points(int axis) const {
  if (axis < 0 || axis >= dim_) throw std::out_of_range("axis " + std::to_string(axis) + " out of range");
  return impl_->points[axis];
}

const std::vector<int>& Grid::points_per_axis() const noexcept { return impl_->points; }
std::size_t Grid::size() const noexcept { return impl_->size; }
std::size_t Grid::spectral_size() const noexcept { return impl_->spectral_size; }
double Grid::spacing(int axis) const { return kTwoPi / points(axis); }

double Grid::cell_volume() const noexcept { return domain_volume() / static_cast<double>(size()); }

double Grid::domain_volume() const noexcept {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a) v *= kTwoPi;
  return v;
}

std::array<int, 3> Grid::node_indices(std::size_t index) const {
  std::array<int, 3> idx{};
  for (int a = dim_ - 1; a >= 0; --a) {
    const auto n = static_cast<std::size_t>(impl_->points[a]);
    idx[a] = static_cast<int>(index % n);
    index /= n;
  }
  return idx;
}

std::array<double, 3> Grid::node(std::size_t index) const {
  const auto idx = node_indices(index);
  std::array<double, 3> x{};
  for (int a = 0; a < dim_; ++a) x[a] = idx[a] * (kTwoPi / impl_->points[a]);
  return x;
}

std::size_t Grid::flat_index(std::array<int, 3> indices) const {
  std::size_t flat = 0;
  for (int a = 0; a < dim_; ++a) {
    const int n = impl_->points[a];
    const int i = ((indices[a] % n) + n) % n;
    flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
  }
  return flat;
}

std::span<const double> Grid::wavenumbers(int axis) const {
  if (axis < 0 || axis >= dim_) throw std::out_of_range("axis " + std::to_string(axis) + " out of range");
  return impl_->k[axis];
}

std::span<const double> Grid::wavenumber_squared() const { return impl_->k2; }

std::span<const unsigned char> Grid::nyquist(int axis) const {
  if (axis < 0 || axis >= dim_) throw std::out_of_range("axis " + std::to_string(axis) + " out of range");
  return impl_->nyquist[axis];
}

std::span<const double> Grid::mode_weight() const { return impl_->weight; }

std::ptrdiff_t Grid::mode_index(std::array<int, 3> k) const {
  const auto& shape = impl_->spectral_shape;
  std::size_t flat = 0;
  for (int a = 0; a < dim_; ++a) {
    const int n = impl_->points[a];
    int i;
    if (a == dim_ - 1) {
      if (k[a] < 0 || k[a] > n / 2) return -1;
      i = k[a];
    } else {
      const int lo = -(n / 2);
      const int hi = (n + 1) / 2 - 1;
      if (k[a] < lo || k[a] > hi) return -1;
      i = k[a] >= 0 ? k[a] : k[a] + n;
    }
    flat = flat * static_cast<std::size_t>(shape[a]) + static_cast<std::size_t>(i);
  }
  return static_cast<std::ptrdiff_t>(flat);
}

bool Grid::operator==(const Grid& other) const noexcept {
  return impl_ == other.impl_ || (dim_ == other.dim_ && impl_->points == other.impl_->points);
}

}  // namespace savch
