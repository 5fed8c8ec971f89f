#pragma once

#include <cmath>
#include <stdexcept>

#include "ramanmem/warnings.hpp"

namespace ramanmem {

/// Gaussian time-bandwidth product: fwhm(|A|^2) * fwhm(spectral intensity).
inline constexpr double kGaussianTimeBandwidth = 0.4412712003053032;  // 2 ln2 / pi

/// Scalar physics constants of one memory configuration. Angular frequencies
/// are in rad/s, times in seconds, energies in joules.
struct PhysicalParams {
  double optical_depth = 1800.0;       // resonant optical depth d
  double gamma = 0.0;                  // homogeneous linewidth of |2>, rad/s
  double detuning = 0.0;               // Delta, rad/s (sign free, enters as Delta and Delta^2)
  double pulse_energy = 0.0;           // write/read pulse energy, J
  double kappa = 0.0;                  // energy -> integrated Rabi-squared, W = kappa * E
  double control_fwhm = 0.0;           // intensity FWHM of the control pulse, s
  double signal_fwhm = 0.0;            // intensity FWHM of the signal pulse, s
  double signal_delay = 0.0;           // signal center minus control center, s
  double storage_time = 0.0;           // write-to-read separation, s
  double spin_decay = 0.0;             // Gamma_B, amplitude decay rate of the spin wave, 1/s

  /// Integrated Rabi-squared W = kappa * E (rad^2/s).
  double rabi_integral() const { return kappa * pulse_energy; }

  /// C^2 = d gamma W / Delta^2 for a given W.
  double coupling_for(double w) const {
    return std::sqrt(optical_depth * gamma * w / (detuning * detuning));
  }
  double coupling() const { return coupling_for(rabi_integral()); }

  /// Throws std::invalid_argument on out-of-domain values; warns (not errors)
  /// when the detuning is less than 10x the signal bandwidth, where the
  /// adiabatic elimination behind the kernels starts to degrade.
  void validate() const {
    if (!(optical_depth > 0.0)) throw std::invalid_argument("optical_depth must be > 0");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
    if (!(std::abs(detuning) > 0.0)) throw std::invalid_argument("detuning must be nonzero");
    if (pulse_energy < 0.0) throw std::invalid_argument("pulse_energy must be >= 0");
    if (kappa < 0.0) throw std::invalid_argument("kappa must be >= 0");
    if (!(control_fwhm > 0.0)) throw std::invalid_argument("control_fwhm must be > 0");
    if (!(signal_fwhm > 0.0)) throw std::invalid_argument("signal_fwhm must be > 0");
    if (spin_decay < 0.0) throw std::invalid_argument("spin_decay must be >= 0");
    if (storage_time < 0.0) throw std::invalid_argument("storage_time must be >= 0");

    const double signal_bandwidth_hz = kGaussianTimeBandwidth / signal_fwhm;
    if (std::abs(detuning) < 10.0 * 2.0 * M_PI * signal_bandwidth_hz)
      emit_warning("detuning is below 10x the signal bandwidth; adiabatic kernels degrade");
  }
};

}  // namespace ramanmem
