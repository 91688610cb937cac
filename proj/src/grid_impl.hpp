#pragma once

#include <fftw3.h>

#include <vector>

#include "savch/grid.hpp"

namespace savch {

struct Grid::Impl {
  Impl(int dim, std::vector<int> points);
  ~Impl();
  Impl(const Impl&) = delete;
  Impl& operator=(const Impl&) = delete;

  std::vector<int> points;
  std::vector<int> spectral_shape;
  std::size_t size = 1;
  std::size_t spectral_size = 1;

  std::array<std::vector<double>, 3> k;
  std::array<std::vector<unsigned char>, 3> nyquist;
  std::vector<double> k2;
  std::vector<double> weight;

  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

}  // namespace savch
