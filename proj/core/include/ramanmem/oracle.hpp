#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramanmem/control.hpp"
#include "ramanmem/envelope.hpp"
#include "ramanmem/spinwave.hpp"

namespace ramanmem {

enum class Scheme { order2, order4 };

/// Full (z, u) field history for offline inspection; row-major, z outermost.
struct GridSnapshot {
  std::size_t n_z = 0;
  std::size_t n_u = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  double rabi_integral = 0.0;
  double coupling = 0.0;
  std::vector<std::complex<double>> alpha;  // n_z * n_u
  std::vector<std::complex<double>> beta;   // n_z * n_u
};

struct PropagationResult {
  ComplexEnvelope a_field;              // field at the exit face, on the input time grid
  SpinWaveProfile b_field;              // spin wave at the end of the interaction
  std::optional<GridSnapshot> snapshot;
};

struct PropagateOptions {
  Scheme scheme = Scheme::order2;
  bool keep_snapshot = false;
};

/// Direct integration of the adiabatic two-field pair
///   d_z alpha(z,u) = i C beta(z,u),   d_u beta(z,u) = i C alpha(z,u)
/// with beta(z,0) = 0, alpha(0,u) = alpha_in(u), on a lattice uniform in the
/// interaction coordinate u = omega(tau). Used as the brute-force cross-check
/// of the analytic storage/transmission kernels.
PropagationResult propagate(const ComplexEnvelope& a_in, const ControlProfile& control,
                            const DepthGrid& zgrid, const PropagateOptions& options = {});

/// Readout counterpart: alpha(0,u) = 0, beta(z,0) = B(z). Returns the
/// retrieved field and the spin wave left behind after the read pulse.
PropagationResult propagate_read(const SpinWaveProfile& b, const ControlProfile& control,
                                 const PropagateOptions& options = {});

/// (N_in - N_mem - N_trans) / N_in for a storage run.
double energy_residual(const PropagationResult& result, const ComplexEnvelope& a_in);

/// Binary dump of a snapshot; layout documented in docs/snapshot_format.md.
void write_snapshot(const std::string& path, const GridSnapshot& snapshot);
GridSnapshot read_snapshot(const std::string& path);

}  // namespace ramanmem
