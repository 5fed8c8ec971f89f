#pragma once

#include <complex>
#include <vector>

#include "ramanmem/envelope.hpp"
#include "ramanmem/grids.hpp"
#include "ramanmem/params.hpp"

namespace ramanmem {

/// The write/read pulse and the derived quantities every kernel consumes:
///   W        = int |Omega|^2 dtau                 (integrated Rabi-squared)
///   omega(t) = (1/W) int_{-inf}^{t} |Omega|^2     (0 at grid start, 1 at end)
///   f(t)     = C exp(i W omega(t)/Delta) Omega(t)/sqrt(W)   (Stark-dressed)
///   C^2      = d gamma W / Delta^2                (memory coupling)
///
/// For a zero-energy pulse W = C = 0 and omega is defined as identically 0;
/// every map built on top of it reduces to pass-through or zero.
struct ControlProfile {
  TimeGrid grid;
  std::vector<std::complex<double>> rabi;
  std::vector<double> omega;
  std::vector<std::complex<double>> f;
  double rabi_integral = 0.0;  // W
  double coupling = 0.0;       // C
  double detuning = 0.0;       // Delta, kept for the Stark phase in coordinate maps

  // Analytic pulse-shape descriptor, set when the profile was built from the
  // standard Gaussian. Lets downstream quadratures evaluate Omega and omega
  // exactly between samples; profiles from arbitrary Rabi data leave it unset.
  bool has_gaussian_shape = false;
  double gauss_center = 0.0;
  double gauss_sigma = 0.0;  // std of |Omega|^2

  double stark_phase(std::size_t i) const { return rabi_integral * omega[i] / detuning; }
};

/// Builds the Gaussian control profile for params at the given center time.
/// W is set from kappa * pulse_energy.
ControlProfile build_control(const PhysicalParams& params, const TimeGrid& grid, double center);

/// Derived-quantity construction from an arbitrary complex Rabi envelope;
/// omega, f, C are computed with W = int |Omega|^2 dtau from the samples.
ControlProfile control_from_rabi(const PhysicalParams& params, const TimeGrid& grid,
                                 std::vector<std::complex<double>> rabi);

}  // namespace ramanmem
