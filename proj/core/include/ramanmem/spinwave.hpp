#pragma once

#include <complex>
#include <vector>

#include "ramanmem/grids.hpp"
#include "ramanmem/quadrature.hpp"

namespace ramanmem {

/// Collective ground-state coherence B(z) on the normalized depth grid.
struct SpinWaveProfile {
  DepthGrid grid;
  std::vector<std::complex<double>> values;

  SpinWaveProfile() = default;
  explicit SpinWaveProfile(const DepthGrid& g)
      : grid(g), values(g.n_points, std::complex<double>(0.0, 0.0)) {}
  SpinWaveProfile(const DepthGrid& g, std::vector<std::complex<double>> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.n_points)
      throw GridError("SpinWaveProfile: sample count does not match grid");
  }

  /// Excitation number int_0^1 |B|^2 dz.
  double excitation_number() const { return norm_squared(values, grid.spacing()); }

  /// B(1-z): the depth-reversed profile used by phase-matched backward readout.
  SpinWaveProfile depth_flipped() const {
    SpinWaveProfile out(grid);
    for (std::size_t i = 0; i < values.size(); ++i) out.values[i] = values[values.size() - 1 - i];
    return out;
  }
};

}  // namespace ramanmem
