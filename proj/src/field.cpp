#include "savch/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace savch {

namespace {

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

}  // namespace

ScalarField::ScalarField(Grid grid) : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}

ScalarField::ScalarField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("sample count " + std::to_string(values_.size()) +
                                " does not match grid size " + std::to_string(grid_.size()));
  }
}

ScalarField::ScalarField(Grid grid, double constant) : grid_(std::move(grid)), values_(grid_.size(), constant) {}

ScalarField ScalarField::sample(const Grid& grid, const std::function<double(const std::array<double, 3>&)>& f) {
  ScalarField out(grid);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(grid.node(i));
  return out;
}

bool ScalarField::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double ScalarField::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::mean() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= other.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) noexcept {
  for (double& v : values_) v *= s;
  return *this;
}

ScalarField& ScalarField::operator+=(double s) noexcept {
  for (double& v : values_) v += s;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
ScalarField operator*(ScalarField a, double s) { return a *= s; }
ScalarField operator-(ScalarField a) { return a *= -1.0; }

double max_abs_difference(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

VectorField::VectorField(const Grid& grid) {
  components.reserve(static_cast<std::size_t>(grid.dim()));
  for (int a = 0; a < grid.dim(); ++a) components.emplace_back(grid);
}

VectorField::VectorField(std::vector<ScalarField> comps) : components(std::move(comps)) {
  if (components.empty()) throw std::invalid_argument("vector field needs at least one component");
  for (const auto& c : components) require_same_grid(components.front().grid(), c.grid());
  if (static_cast<int>(components.size()) != components.front().grid().dim()) {
    throw std::invalid_argument("vector field component count must equal grid dimension");
  }
}

ScalarField VectorField::norm_squared() const {
  ScalarField out(grid());
  for (const auto& c : components) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c[i] * c[i];
  }
  return out;
}

Spectrum::Spectrum(Grid grid) : grid_(std::move(grid)), modes_(grid_.spectral_size()) {}

Spectrum::Spectrum(Grid grid, std::vector<std::complex<double>> modes)
    : grid_(std::move(grid)), modes_(std::move(modes)) {
  if (modes_.size() != grid_.spectral_size()) throw std::invalid_argument("mode count does not match grid");
}

std::complex<double> Spectrum::mode(std::array<int, 3> k) const {
  if (auto i = grid_.mode_index(k); i >= 0) return modes_[static_cast<std::size_t>(i)];
  std::array<int, 3> neg{-k[0], -k[1], -k[2]};
  if (auto i = grid_.mode_index(neg); i >= 0) return std::conj(modes_[static_cast<std::size_t>(i)]);
  throw std::out_of_range("wavevector not representable on this grid");
}

Spectrum& Spectrum::operator+=(const Spectrum& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < modes_.size(); ++i) modes_[i] += other.modes_[i];
  return *this;
}

Spectrum& Spectrum::operator-=(const Spectrum& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < modes_.size(); ++i) modes_[i] -= other.modes_[i];
  return *this;
}

Spectrum& Spectrum::operator*=(double s) noexcept {
  for (auto& m : modes_) m *= s;
  return *this;
}

Spectrum operator+(Spectrum a, const Spectrum& b) { return a += b; }
Spectrum operator-(Spectrum a, const Spectrum& b) { return a -= b; }
Spectrum operator*(double s, Spectrum a) { return a *= s; }

}  // namespace savch
