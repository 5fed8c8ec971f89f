#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <vector>

#include "ramanmem/grids.hpp"

namespace ramanmem::detail {

// Catmull-Rom cubic through uniformly spaced samples, zero outside the grid.
// O(h^4) off-grid evaluation for smooth data.
inline std::complex<double> catmull_rom(const std::vector<std::complex<double>>& v,
                                        const TimeGrid& grid, double t) {
  const double x = (t - grid.t_start) / grid.spacing();
  if (x < 0.0 || x > static_cast<double>(v.size() - 1)) return {0.0, 0.0};
  const std::size_t i1 = std::min(v.size() - 2, static_cast<std::size_t>(x));
  const double s = x - static_cast<double>(i1);
  const std::complex<double> p1 = v[i1];
  const std::complex<double> p2 = v[i1 + 1];
  const std::complex<double> p0 = i1 > 0 ? v[i1 - 1] : p1;
  const std::complex<double> p3 = i1 + 2 < v.size() ? v[i1 + 2] : p2;
  const std::complex<double> a = 2.0 * p1;
  const std::complex<double> b = p2 - p0;
  const std::complex<double> c = 2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3;
  const std::complex<double> d = -p0 + 3.0 * p1 - 3.0 * p2 + p3;
  return 0.5 * (a + b * s + c * s * s + d * s * s * s);
}

// Sixth-order Lagrange interpolation on a uniform grid (6-point stencil),
// zero outside the grid. Used where reparametrizations must conserve photon
// number to better than 1e-9.
inline std::complex<double> lagrange6(const std::vector<std::complex<double>>& v,
                                      const TimeGrid& grid, double t) {
  const double x = (t - grid.t_start) / grid.spacing();
  if (x < 0.0 || x > static_cast<double>(v.size() - 1)) return {0.0, 0.0};
  const std::size_t n = v.size();
  std::size_t i0;
  const auto anchor = static_cast<std::ptrdiff_t>(x);
  if (anchor < 2) {
    i0 = 0;
  } else if (static_cast<std::size_t>(anchor) + 3 >= n) {
    i0 = n - 6;
  } else {
    i0 = static_cast<std::size_t>(anchor) - 2;
  }
  const double s = x - static_cast<double>(i0);
  std::complex<double> acc(0.0, 0.0);
  for (int j = 0; j < 6; ++j) {
    double basis = 1.0;
    for (int k = 0; k < 6; ++k) {
      if (k == j) continue;
      basis *= (s - k) / static_cast<double>(j - k);
    }
    acc += basis * v[i0 + static_cast<std::size_t>(j)];
  }
  return acc;
}

inline double catmull_rom_real(const std::vector<double>& v, double index) {
  if (index <= 0.0) return v.front();
  if (index >= static_cast<double>(v.size() - 1)) return v.back();
  const std::size_t i1 = std::min(v.size() - 2, static_cast<std::size_t>(index));
  const double s = index - static_cast<double>(i1);
  const double p1 = v[i1];
  const double p2 = v[i1 + 1];
  const double p0 = i1 > 0 ? v[i1 - 1] : p1;
  const double p3 = i1 + 2 < v.size() ? v[i1 + 2] : p2;
  return 0.5 * ((2.0 * p1) + (p2 - p0) * s + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * s * s +
                (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * s * s * s);
}

}  // namespace ramanmem::detail
