#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "ramanmem/control.hpp"
#include "ramanmem/envelope.hpp"
#include "interp.hpp"

namespace ramanmem::detail {

// Cumulative interaction measure
//     F(u) = int_{omega(t') <= u} (f(t')/C) A(t') dt',
// the quantity both the transmission kernel and the direct integrator consume.
// It is accumulated on an oversampled time grid so the C^2-scaled Stark
// oscillation of the integrand is resolved far beyond the caller's grid;
// Omega and omega come from the analytic pulse shape when the control carries
// one, and the signal is upsampled with a cubic.
struct RefinedMeasure {
  std::vector<double> omega;                     // on the refined time grid
  std::vector<std::complex<double>> cumulative;  // F at the same nodes

  std::complex<double> at(double u) const {
    if (u <= omega.front()) return cumulative.front();
    if (u >= omega.back()) return cumulative.back();
    const auto it = std::upper_bound(omega.begin(), omega.end(), u);
    const std::size_t k = static_cast<std::size_t>(it - omega.begin());
    const double den = omega[k] - omega[k - 1];
    const double s = den > 0.0 ? (u - omega[k - 1]) / den : 0.0;
    return cumulative[k - 1] + s * (cumulative[k] - cumulative[k - 1]);
  }
};

inline RefinedMeasure build_refined_measure(const ComplexEnvelope& a_in,
                                            const ControlProfile& control,
                                            std::size_t oversample = 8) {
  const TimeGrid& grid = a_in.grid;
  const std::size_t n = (grid.n_points - 1) * oversample + 1;
  const double h = grid.span() / static_cast<double>(n - 1);
  const double w = control.rabi_integral;
  const double theta = w / control.detuning;
  const double inv_sqrt_w = 1.0 / std::sqrt(w);

  RefinedMeasure measure;
  measure.omega.resize(n);
  measure.cumulative.resize(n);

  const bool analytic = control.has_gaussian_shape;
  double erf_lo = 0.0;
  double erf_span = 1.0;
  double sigma = 0.0;
  double gauss_norm = 0.0;
  if (analytic) {
    sigma = control.gauss_sigma;
    const double inv = 1.0 / (sigma * std::sqrt(2.0));
    erf_lo = std::erf((grid.t_start - control.gauss_center) * inv);
    erf_span = std::erf((grid.t_end - control.gauss_center) * inv) - erf_lo;
    gauss_norm = w / (std::sqrt(2.0 * M_PI) * sigma);  // peak of |Omega|^2
  }

  // m(t) = e^{i theta omega(t)} Omega(t) A(t) / sqrt(W)  ( = f A / C )
  auto sample = [&](double t, double& omega_out) -> std::complex<double> {
    double om;
    std::complex<double> rabi;
    if (analytic) {
      const double x = (t - control.gauss_center) / sigma;
      const double inv = 1.0 / (sigma * std::sqrt(2.0));
      om = (std::erf((t - control.gauss_center) * inv) - erf_lo) / erf_span;
      rabi = std::sqrt(gauss_norm * std::exp(-0.5 * x * x));
    } else {
      const double idx = (t - grid.t_start) / grid.spacing();
      om = std::clamp(catmull_rom_real(control.omega, idx), 0.0, 1.0);
      rabi = catmull_rom(control.rabi, grid, t);
    }
    omega_out = om;
    const std::complex<double> a = catmull_rom(a_in.values, grid, t);
    return std::polar(1.0, theta * om) * rabi * a * inv_sqrt_w;
  };

  double om_prev = 0.0;
  std::complex<double> m_prev = sample(grid.t_start, om_prev);
  measure.omega[0] = 0.0;
  measure.cumulative[0] = 0.0;
  double om_cur = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double t = grid.t_start + h * static_cast<double>(i);
    const std::complex<double> m_cur = sample(t, om_cur);
    measure.cumulative[i] = measure.cumulative[i - 1] + 0.5 * h * (m_cur + m_prev);
    measure.omega[i] = std::max(om_cur, measure.omega[i - 1]);  // guard roundoff
    m_prev = m_cur;
  }
  measure.omega.back() = std::max(measure.omega.back(), control.omega.back());
  return measure;
}

}  // namespace ramanmem::detail
