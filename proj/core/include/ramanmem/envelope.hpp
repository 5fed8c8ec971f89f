#pragma once

#include <complex>
#include <vector>

#include "ramanmem/grids.hpp"
#include "ramanmem/quadrature.hpp"

namespace ramanmem {

/// Complex temporal field amplitude in sqrt(photon flux) units, so that
/// int |A|^2 dtau counts photons.
struct ComplexEnvelope {
  TimeGrid grid;
  std::vector<std::complex<double>> values;

  ComplexEnvelope() = default;
  explicit ComplexEnvelope(const TimeGrid& g)
      : grid(g), values(g.n_points, std::complex<double>(0.0, 0.0)) {}
  ComplexEnvelope(const TimeGrid& g, std::vector<std::complex<double>> v);

  /// Photon number int |A|^2 dtau by trapezoidal quadrature.
  double photon_number() const { return norm_squared(values, grid.spacing()); }

  /// Intensity-weighted temporal centroid; photon_number must be > 0.
  double centroid() const;
};

/// Gaussian pulse whose *intensity* profile |A|^2 has the stated FWHM and
/// integrates to `norm` photons. `phase` applies a constant phase factor.
ComplexEnvelope gaussian_envelope(const TimeGrid& grid, double center, double fwhm, double norm,
                                  double phase = 0.0);

}  // namespace ramanmem
