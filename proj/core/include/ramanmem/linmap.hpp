#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "ramanmem/control.hpp"
#include "ramanmem/grids.hpp"

namespace ramanmem {

enum class MapKind { storage, total_forward, total_backward };

/// Discretized memory map with sqrt(quadrature-weight) symmetrization on both
/// sides, so singular values are physical amplitude-transfer ratios and
/// ||M a||^2 equals the quadrature photon/excitation count of the image.
struct LinearMap {
  MapKind kind = MapKind::storage;
  Eigen::MatrixXcd matrix;  // rows: output samples, cols: input samples
  TimeGrid time_grid;
  DepthGrid depth_grid;
};

LinearMap build_map(MapKind kind, const ControlProfile& control, const DepthGrid& zgrid);

/// Weighted input vector a_k = A(t_k) sqrt(w_k) for use with LinearMap.
Eigen::VectorXcd weighted_input(const ComplexEnvelope& a);

struct DominantMode {
  double sigma = 0.0;
  Eigen::VectorXcd input_mode;   // unit norm
  Eigen::VectorXcd output_mode;  // unit norm
  int iterations = 0;
};

/// Dominant singular triple by alternating the map and its adjoint, started
/// from the all-ones vector; converged when successive sigma estimates differ
/// by less than tol. Throws ConvergenceError past max_iterations.
DominantMode dominant_mode(const LinearMap& map, double tol, int max_iterations = 20000);

}  // namespace ramanmem
