#include "ramanmem/envelope.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "ramanmem/warnings.hpp"

namespace ramanmem {

ComplexEnvelope::ComplexEnvelope(const TimeGrid& g, std::vector<std::complex<double>> v)
    : grid(g), values(std::move(v)) {
  if (values.size() != grid.n_points)
    throw GridError("ComplexEnvelope: sample count does not match grid");
}

double ComplexEnvelope::centroid() const {
  const double h = grid.spacing();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double w = trapezoid_weight(i, values.size(), h) * std::norm(values[i]);
    num += w * grid.at(i);
    den += w;
  }
  if (den <= 0.0) throw NumericsError("centroid of zero-norm envelope is undefined");
  return num / den;
}

ComplexEnvelope gaussian_envelope(const TimeGrid& grid, double center, double fwhm, double norm,
                                  double phase) {
  if (!(fwhm > 0.0)) throw std::invalid_argument("gaussian_envelope: fwhm must be positive");
  if (norm < 0.0) throw std::invalid_argument("gaussian_envelope: norm must be nonnegative");
  if (grid.spacing() > fwhm / 8.0)
    throw GridError("gaussian_envelope: grid too coarse, need >= 8 samples per fwhm");
  if (center - 3.0 * fwhm < grid.t_start || center + 3.0 * fwhm > grid.t_end)
    emit_warning("gaussian_envelope: grid does not span center +/- 3 fwhm, pulse is truncated");

  // |A|^2 = norm * exp(-(t-c)^2 / (2 s^2)) / (sqrt(2 pi) s),  fwhm = 2 sqrt(2 ln 2) s
  const double s = fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  const double peak_intensity = norm / (std::sqrt(2.0 * M_PI) * s);
  const std::complex<double> rot = std::polar(1.0, phase);

  ComplexEnvelope env(grid);
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double x = (grid.at(i) - center) / s;
    env.values[i] = rot * std::sqrt(peak_intensity * std::exp(-0.5 * x * x));
  }
  return env;
}

}  // namespace ramanmem
