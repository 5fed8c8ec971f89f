#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "ramanmem/envelope.hpp"
#include "ramanmem/grids.hpp"
#include "ramanmem/params.hpp"

namespace ramanmem {

struct SweepRow {
  double energy_nj = 0.0;
  std::optional<double> eta_store;
  std::optional<double> eta_tot;
  std::optional<double> eta_ret;
  std::optional<double> eta_opt_fwd;
  std::optional<double> eta_opt_bwd;
};

/// Efficiency-vs-energy table. Serializes to CSV with the fixed header
/// energy_nJ,eta_store,eta_tot,eta_ret,eta_opt_fwd,eta_opt_bwd
/// (absent values are empty cells).
struct SweepTable {
  std::vector<SweepRow> rows;
  void write_csv(std::ostream& os) const;
};

/// Finds kappa such that the Gaussian-mode storage efficiency at
/// target_energy (joules) equals target_eta_store, by bracketed bisection on
/// the rising branch; |eta - target| <= 1e-6 at return. Throws
/// CalibrationError when the target exceeds what any kappa can reach.
double calibrate_kappa(const PhysicalParams& params, const TimeGrid& tgrid, const DepthGrid& zgrid,
                       double target_energy, double target_eta_store);

/// Gaussian-mode eta_store / eta_tot / eta_ret per energy (params.kappa must
/// be calibrated).
SweepTable efficiency_sweep(const PhysicalParams& params, const TimeGrid& tgrid,
                            const DepthGrid& zgrid, const std::vector<double>& energies_nj);

/// Optimal-mode bounds per energy: eta_opt_fwd/bwd = sigma_max^2 of the
/// composed storage+retrieval maps (forward and phase-matched backward);
/// Gaussian-mode columns are filled too so dominance is visible per row.
SweepTable bounds_curve(const PhysicalParams& params, const TimeGrid& tgrid, const DepthGrid& zgrid,
                        const std::vector<double>& energies_nj, double sigma_tol = 1e-10,
                        int max_iterations = 20000);

/// The experimental Gaussian signal mode of a configuration: unit photon
/// number, centered signal_delay after the control center.
ComplexEnvelope gaussian_signal(const PhysicalParams& params, const TimeGrid& tgrid,
                                double control_center = 0.0);

}  // namespace ramanmem
