#pragma once

#include <optional>

#include "ramanmem/control.hpp"
#include "ramanmem/envelope.hpp"
#include "ramanmem/spinwave.hpp"

namespace ramanmem {

enum class Direction { forward, backward };

/// Photon/excitation bookkeeping of one storage + retrieval run.
struct EfficiencyReport {
  double n_in = 0.0;
  double n_mem = 0.0;
  double n_trans = 0.0;
  double n_out = 0.0;
  double eta_store = 0.0;
  double eta_tot = 0.0;
  std::optional<double> eta_ret;  // absent when nothing was stored
  double closure_residual = 0.0;  // (n_in - n_mem - n_trans) / n_in
  std::optional<double> visibility;
};

/// Storage map: B(z) = int f(t) J0[2 C sqrt((1 - omega(t)) z)] A_in(t) dt.
SpinWaveProfile store(const ComplexEnvelope& a_in, const ControlProfile& control,
                      const DepthGrid& zgrid);

/// Transmitted (unstored) field at the exit face. Companion map of `store`:
/// in the coordinates u = omega(t), alpha = e^{i W omega/Delta} sqrt(W) A/Omega,
/// the adiabatic pair  d_z alpha = i C beta,  d_u beta = i C alpha  is solved
/// by the same J0 Riemann kernel as the storage map, and eliminating beta gives
///   alpha_out(u) = alpha_in(u) - C int_0^u J1(2C sqrt(u-u')) / sqrt(u-u') alpha_in(u') du'.
/// See kernel.cpp for the discretization.
ComplexEnvelope transmit(const ComplexEnvelope& a_in, const ControlProfile& control);

/// Readout map: A_out(t) = f*(t) int_0^1 J0[2 C sqrt(omega(t)(1 - z))] B(z) dz.
/// Backward readout applies the same map to the depth-flipped spin wave.
ComplexEnvelope retrieve(const SpinWaveProfile& b, const ControlProfile& control,
                         Direction direction);

/// Counts and ratios; eta_store = N_mem/N_in, eta_tot = N_out/N_in,
/// eta_ret = eta_tot/eta_store (absent when N_mem == 0).
EfficiencyReport efficiencies(const ComplexEnvelope& a_in, const ComplexEnvelope& a_trans,
                              const SpinWaveProfile& b_mem, const ComplexEnvelope& a_out);

struct Visibility {
  double balanced = 0.0;  // |<ref, out>| / sqrt(N_ref N_out), attenuation-optimized arms
  double raw = 0.0;       // 2 |<ref, out>| / (N_ref + N_out), as-given arm ratio
};

/// Interference contrast between two fields on a common grid.
Visibility overlap_visibility(const ComplexEnvelope& a_ref, const ComplexEnvelope& a_out);

}  // namespace ramanmem
