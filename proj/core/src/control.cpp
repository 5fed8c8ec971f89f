#include "ramanmem/control.hpp"

#include <cmath>
#include <optional>
#include <utility>

namespace ramanmem {

namespace {

ControlProfile finish_profile(const PhysicalParams& params, const TimeGrid& grid,
                              std::vector<std::complex<double>> rabi, double w,
                              const std::vector<double>* omega_exact) {
  ControlProfile profile;
  profile.grid = grid;
  profile.rabi = std::move(rabi);
  profile.rabi_integral = w;
  profile.detuning = params.detuning;
  profile.coupling = params.coupling_for(w);
  profile.omega.assign(grid.n_points, 0.0);
  profile.f.assign(grid.n_points, std::complex<double>(0.0, 0.0));

  if (w <= 0.0) return profile;  // omega == 0 by definition, f == 0, C == 0

  if (omega_exact) {
    profile.omega = *omega_exact;
  } else {
    const double h = grid.spacing();
    double accum = 0.0;
    double prev = std::norm(profile.rabi[0]);
    for (std::size_t i = 1; i < grid.n_points; ++i) {
      const double cur = std::norm(profile.rabi[i]);
      accum += 0.5 * h * (prev + cur);
      profile.omega[i] = accum;
      prev = cur;
    }
    // normalize so omega(t_end) = 1 exactly on the grid
    const double total = profile.omega.back();
    for (auto& v : profile.omega) v /= total;
  }

  const double inv_sqrt_w = 1.0 / std::sqrt(w);
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double phase = w * profile.omega[i] / params.detuning;
    profile.f[i] = profile.coupling * std::polar(1.0, phase) * profile.rabi[i] * inv_sqrt_w;
  }
  return profile;
}

}  // namespace

ControlProfile build_control(const PhysicalParams& params, const TimeGrid& grid, double center) {
  params.validate();
  const double w = params.rabi_integral();

  std::vector<std::complex<double>> rabi(grid.n_points, std::complex<double>(0.0, 0.0));
  std::vector<double> omega(grid.n_points, 0.0);
  const double sigma = params.control_fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  if (w > 0.0) {
    // |Omega|^2 Gaussian with the control's intensity FWHM, integrating to W
    ComplexEnvelope sq = gaussian_envelope(grid, center, params.control_fwhm, w);
    for (std::size_t i = 0; i < grid.n_points; ++i) rabi[i] = sq.values[i];

    // For the Gaussian control the integrated-Rabi coordinate has a closed
    // form; using it keeps the C^2-scaled Stark phase free of cumulative
    // quadrature bias, which otherwise dominates conservation residuals at
    // strong coupling.
    const double inv = 1.0 / (sigma * std::sqrt(2.0));
    const double lo = std::erf((grid.t_start - center) * inv);
    const double hi = std::erf((grid.t_end - center) * inv);
    for (std::size_t i = 0; i < grid.n_points; ++i)
      omega[i] = (std::erf((grid.at(i) - center) * inv) - lo) / (hi - lo);
    omega.front() = 0.0;
    omega.back() = 1.0;
  }
  ControlProfile profile = finish_profile(params, grid, std::move(rabi), w, w > 0.0 ? &omega : nullptr);
  profile.has_gaussian_shape = w > 0.0;
  profile.gauss_center = center;
  profile.gauss_sigma = sigma;
  return profile;
}

ControlProfile control_from_rabi(const PhysicalParams& params, const TimeGrid& grid,
                                 std::vector<std::complex<double>> rabi) {
  if (rabi.size() != grid.n_points)
    throw GridError("control_from_rabi: sample count does not match grid");
  double w = 0.0;
  const double h = grid.spacing();
  for (std::size_t i = 0; i < rabi.size(); ++i)
    w += trapezoid_weight(i, rabi.size(), h) * std::norm(rabi[i]);
  return finish_profile(params, grid, std::move(rabi), w, nullptr);
}

}  // namespace ramanmem
