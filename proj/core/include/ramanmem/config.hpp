#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ramanmem/grids.hpp"
#include "ramanmem/params.hpp"

namespace ramanmem {

/// Structured run configuration. The committed config/default.cfg mirrors
/// these defaults exactly; they reproduce the published operating point of
/// the memory (300 ps pulses, 18.4 GHz detuning, d = 1800, 12.5 ns storage,
/// calibration anchored at 4.8 nJ -> 30% storage).
struct RunConfig {
  struct Physical {
    double optical_depth = 1800.0;
    // Effective homogeneous linewidth of the excited state. Not printed in
    // the source experiment; fitted so the calibrated model reproduces the
    // reported efficiency set. Interpreted per gamma_convention.
    double gamma_hz = 8.5e6;
    std::string gamma_convention = "hwhm";  // "hwhm": gamma = 2 pi gamma_hz,
                                            // "fwhm": gamma = pi gamma_hz
    double detuning_ghz = 18.4;
    double pulse_energy_nj = 4.8;
    double kappa = 0.0;  // 0 = calibrate lazily from the calibration block
    double control_fwhm_ps = 300.0;
    double signal_fwhm_ps = 300.0;
    // Signal timing adjustment standing in for the etalon dispersion of the
    // input filter chain (fitted; the magnitudes are not published).
    double signal_delay_ps = 200.0;
    double storage_time_ns = 12.5;
    double spin_decay_per_s = 0.0;
  } physical;

  struct Grid {
    double t_start_ns = -1.6;
    double t_end_ns = 1.9;
    std::uint32_t n_time = 1024;
    std::uint32_t n_depth = 512;
  } grid;

  struct Pulse {
    double control_center_ns = 0.0;
    double read_energy_nj = -1.0;  // < 0: read pulse equals the write pulse
  } pulse;

  struct Calibration {
    double target_energy_nj = 4.8;
    double target_eta_store = 0.30;
  } calibration;

  struct Sweep {
    std::vector<double> energies_nj = {0.0, 0.6, 1.2, 1.8, 2.4, 3.0,  3.6, 4.2,
                                       4.8, 6.0, 8.0, 10.0, 12.5, 15.0};
  } sweep;

  struct Optimize {
    std::vector<double> energies_nj = {0.0, 2.4, 4.8, 7.2, 9.6, 12.0, 15.0, 20.0, 25.0, 30.0};
    double sigma_tol = 1e-10;
    std::uint32_t max_iterations = 20000;
    double plateau_slope_pp_per_nj = 0.5;
  } optimize;

  struct Experiment {
    double etalon_delay_ps = 0.0;
    double etalon_stretch = 1.0;
    // Interferometer reference-arm offset relative to the nominal signal
    // timing; fitted to the reported model visibility (the physical arm
    // setting is not published).
    double reference_arm_delay_ps = -85.0;
    double detector_response_fwhm_ns = 1.0;
    double fringe_wavelength_nm = 852.0;
    std::uint32_t fringe_positions = 100;
    double fringe_span_wavelengths = 2.0;
    double fringe_noise_sd = 0.0;
    std::uint64_t fringe_seed = 12345;
    double visibility_benchmark = 1.0;  // divisor for interferometer-instability normalization
  } experiment;

  struct Metadata {
    double wavelength_nm = 852.0;
    double sideband_ghz = 9.2;
    double beam_waist_um = 350.0;
    double cell_length_cm = 7.0;
    double cell_temperature_c = 62.5;
    double coherence_time_us = 100.0;
    double bandwidth_ghz = 1.5;
  } metadata;

  /// PhysicalParams in SI units (kappa as stored; calibrate separately).
  PhysicalParams physical_params() const;
  TimeGrid time_grid(std::uint32_t grid_scale = 1) const;
  DepthGrid depth_grid(std::uint32_t grid_scale = 1) const;

  /// Ordered key=value view of every field (used for the report echo and for
  /// the override machinery).
  std::vector<std::pair<std::string, std::string>> flatten() const;
};

/// Parses the sectioned key=value format documented in config/default.cfg.
/// Unknown sections or keys throw ConfigError naming the line.
RunConfig parse_config_text(const std::string& text, const RunConfig& base = RunConfig());
RunConfig parse_config_file(const std::string& path, const RunConfig& base = RunConfig());

/// Applies one "section.key=value" override.
void apply_override(RunConfig& config, const std::string& assignment);

}  // namespace ramanmem
