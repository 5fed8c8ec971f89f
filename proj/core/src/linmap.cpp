#include "ramanmem/linmap.hpp"

#include <cmath>
#include <string>

#include "ramanmem/bessel.hpp"
#include "ramanmem/errors.hpp"

namespace ramanmem {

namespace {

Eigen::MatrixXcd storage_matrix(const ControlProfile& control, const DepthGrid& zgrid) {
  const std::size_t nt = control.grid.n_points;
  const std::size_t nz = zgrid.n_points;
  const double ht = control.grid.spacing();
  const double hz = zgrid.spacing();
  const double c = control.coupling;

  Eigen::MatrixXcd m(nz, nt);
  for (std::size_t row = 0; row < nz; ++row) {
    const double z = zgrid.at(row);
    const double wz = std::sqrt(trapezoid_weight(row, nz, hz));
    for (std::size_t col = 0; col < nt; ++col) {
      const double wt = std::sqrt(trapezoid_weight(col, nt, ht));
      const double arg = 2.0 * c * std::sqrt(std::max(0.0, (1.0 - control.omega[col]) * z));
      m(row, col) = wz * control.f[col] * bessel_j0(arg) * wt;
    }
  }
  return m;
}

Eigen::MatrixXcd retrieval_matrix(const ControlProfile& control, const DepthGrid& zgrid) {
  const std::size_t nt = control.grid.n_points;
  const std::size_t nz = zgrid.n_points;
  const double ht = control.grid.spacing();
  const double hz = zgrid.spacing();
  const double c = control.coupling;

  Eigen::MatrixXcd m(nt, nz);
  for (std::size_t row = 0; row < nt; ++row) {
    const double wt = std::sqrt(trapezoid_weight(row, nt, ht));
    for (std::size_t col = 0; col < nz; ++col) {
      const double wz = std::sqrt(trapezoid_weight(col, nz, hz));
      const double arg =
          2.0 * c * std::sqrt(std::max(0.0, control.omega[row] * (1.0 - zgrid.at(col))));
      m(row, col) = wt * std::conj(control.f[row]) * bessel_j0(arg) * wz;
    }
  }
  return m;
}

}  // namespace

LinearMap build_map(MapKind kind, const ControlProfile& control, const DepthGrid& zgrid) {
  if (zgrid.n_points < 64) throw GridError("build_map: need >= 64 depth samples");
  if (control.coupling > 0.0) {
    double peak = 0.0;
    for (const auto& r : control.rabi) peak = std::max(peak, std::norm(r));
    std::size_t above_half = 0;
    for (const auto& r : control.rabi)
      if (std::norm(r) >= 0.5 * peak) ++above_half;
    if (above_half < 8)
      throw GridError("build_map: time grid does not resolve the control (>= 8 samples per FWHM)");
  }

  LinearMap map;
  map.kind = kind;
  map.time_grid = control.grid;
  map.depth_grid = zgrid;

  switch (kind) {
    case MapKind::storage:
      map.matrix = storage_matrix(control, zgrid);
      break;
    case MapKind::total_forward:
      map.matrix = retrieval_matrix(control, zgrid) * storage_matrix(control, zgrid);
      break;
    case MapKind::total_backward: {
      // depth flip between storage and readout; uniform z weights are
      // symmetric under the flip, so the permutation commutes with them
      Eigen::MatrixXcd stored = storage_matrix(control, zgrid);
      map.matrix = retrieval_matrix(control, zgrid) * stored.colwise().reverse();
      break;
    }
  }
  for (Eigen::Index i = 0; i < map.matrix.size(); ++i)
    if (!std::isfinite(map.matrix.data()[i].real()) || !std::isfinite(map.matrix.data()[i].imag()))
      throw NumericsError("build_map: non-finite matrix entry");
  return map;
}

Eigen::VectorXcd weighted_input(const ComplexEnvelope& a) {
  const double h = a.grid.spacing();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(a.values.size()));
  for (std::size_t i = 0; i < a.values.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = a.values[i] * std::sqrt(trapezoid_weight(i, a.values.size(), h));
  return v;
}

DominantMode dominant_mode(const LinearMap& map, double tol, int max_iterations) {
  if (!(tol > 0.0)) throw std::invalid_argument("dominant_mode: tol must be positive");
  const Eigen::MatrixXcd& m = map.matrix;

  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(m.cols());
  v.normalize();

  double sigma_prev = -1.0;
  double gap = 0.0;
  DominantMode result;
  for (int it = 1; it <= max_iterations; ++it) {
    Eigen::VectorXcd w = m * v;
    const double sigma = w.norm();
    if (sigma == 0.0) {  // zero map: any unit vector is a valid maximizer
      result.sigma = 0.0;
      result.input_mode = v;
      result.output_mode = Eigen::VectorXcd::Zero(m.rows());
      result.iterations = it;
      return result;
    }
    v = m.adjoint() * w;
    v.normalize();
    result.iterations = it;
    gap = std::abs(sigma - sigma_prev);
    if (gap < tol) {
      result.sigma = sigma;
      result.input_mode = v;
      result.output_mode = w / sigma;
      return result;
    }
    sigma_prev = sigma;
  }
  throw ConvergenceError("dominant_mode: no convergence after " + std::to_string(max_iterations) +
                         " iterations; last sigma gap estimate " + std::to_string(gap));
}

}  // namespace ramanmem
