#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ramanmem {

// All plain integrals in this project use the composite trapezoidal rule on
// uniform grids. One rule everywhere keeps the photon-number bookkeeping
// between modules consistent.

inline double trapezoid_weight(std::size_t i, std::size_t n, double h) {
  return (i == 0 || i + 1 == n) ? 0.5 * h : h;
}

inline double trapezoid(const std::vector<double>& samples, double h) {
  if (samples.size() < 2) return 0.0;
  double acc = 0.5 * (samples.front() + samples.back());
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) acc += samples[i];
  return acc * h;
}

/// Integral of |v|^2 over a uniform grid with spacing h.
inline double norm_squared(const std::vector<std::complex<double>>& v, double h) {
  if (v.size() < 2) return 0.0;
  double acc = 0.5 * (std::norm(v.front()) + std::norm(v.back()));
  for (std::size_t i = 1; i + 1 < v.size(); ++i) acc += std::norm(v[i]);
  return acc * h;
}

/// Trapezoidal inner product  sum_k w_k conj(a_k) b_k.
inline std::complex<double> inner_product(const std::vector<std::complex<double>>& a,
                                          const std::vector<std::complex<double>>& b, double h) {
  std::complex<double> acc = 0.5 * (std::conj(a.front()) * b.front() + std::conj(a.back()) * b.back());
  for (std::size_t i = 1; i + 1 < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc * h;
}

}  // namespace ramanmem
