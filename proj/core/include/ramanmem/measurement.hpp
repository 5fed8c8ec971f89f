#pragma once

#include <cstdint>
#include <vector>

#include "ramanmem/envelope.hpp"
#include "ramanmem/spinwave.hpp"

namespace ramanmem {

/// Time-shifts an envelope by `delay` and rescales its duration by `stretch`
/// (unitary reparametrization A'(t) = A((t - delay)/stretch)/sqrt(stretch)).
/// Warns when more than 1% of the energy is pushed off the grid.
ComplexEnvelope etalon_adjust(const ComplexEnvelope& a, double delay, double stretch);

/// Uniform amplitude decay B -> B exp(-gamma_b * t_store).
SpinWaveProfile spinwave_decay(const SpinWaveProfile& b, double t_store, double gamma_b);

/// |A|^2 on the envelope's grid (photon flux vs time).
struct IntensityTrace {
  TimeGrid grid;
  std::vector<double> values;

  double integral() const;
  /// FWHM of the trace by linear interpolation of the half-maximum crossings.
  double fwhm() const;
};

IntensityTrace intensity(const ComplexEnvelope& a);

/// Detected trace: |A|^2 convolved with a unit-area Gaussian response of the
/// stated FWHM. response_fwhm = 0 returns |A|^2 unchanged.
IntensityTrace detector_convolve(const ComplexEnvelope& a, double response_fwhm);

/// Mach-Zehnder fringe scan over path-length offsets.
struct FringeScan {
  std::vector<double> positions;    // path-length offsets (same units as wavelength)
  std::vector<double> intensities;  // nonnegative
  std::uint64_t noise_seed = 0;
};

struct FringeFit {
  double visibility = 0.0;  // clamped to [0, 1]
  double phase = 0.0;
  double mean_intensity = 0.0;
  double period = 0.0;
  double residual_norm = 0.0;
  bool visibility_clamped = false;
};

/// I(x) = N_ref + N_out + 2 Re[e^{i 2 pi x / lambda} <A_ref, A_out>] plus
/// seeded additive Gaussian noise of standard deviation noise_sd.
FringeScan synthesize_fringes(const ComplexEnvelope& a_ref, const ComplexEnvelope& a_out,
                              const std::vector<double>& positions, double wavelength,
                              double noise_sd, std::uint64_t seed);

/// Least-squares fit of I(x) = I0 (1 + V sin(2 pi x / p + phi)), with the
/// period initialized at period_guess and refined by a 1-D search.
FringeFit fit_fringes(const FringeScan& scan, double period_guess);

}  // namespace ramanmem
