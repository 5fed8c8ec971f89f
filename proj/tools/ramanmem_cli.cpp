// Command-line front end: simulate / sweep / optimize / visibility / validate
// pipelines over a sectioned key=value config, emitting deterministic CSV and
// JSON artifacts.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ramanmem/config.hpp"
#include "ramanmem/errors.hpp"
#include "ramanmem/kernel.hpp"
#include "ramanmem/linmap.hpp"
#include "ramanmem/measurement.hpp"
#include "ramanmem/oracle.hpp"
#include "ramanmem/report.hpp"
#include "ramanmem/sweep.hpp"

namespace {

using namespace ramanmem;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCalibration = 4;

struct CliOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = "out";
  std::string format = "json";
  std::uint32_t grid_scale = 1;
  std::string snapshot_path;  // validate only
};

struct Session {
  RunConfig config;
  PhysicalParams params;
  TimeGrid tgrid{0.0, 1.0, 2};
  DepthGrid zgrid{2};
  double kappa = 0.0;
  bool kappa_was_calibrated = false;
};

Session open_session(const CliOptions& opts) {
  Session s;
  if (!opts.config_path.empty()) s.config = parse_config_file(opts.config_path);
  for (const auto& assignment : opts.overrides) apply_override(s.config, assignment);

  s.tgrid = s.config.time_grid(opts.grid_scale);
  s.zgrid = s.config.depth_grid(opts.grid_scale);
  s.params = s.config.physical_params();

  if (s.params.kappa > 0.0) {
    s.kappa = s.params.kappa;
  } else {
    s.kappa = calibrate_kappa(s.params, s.tgrid, s.zgrid,
                              s.config.calibration.target_energy_nj * 1e-9,
                              s.config.calibration.target_eta_store);
    s.params.kappa = s.kappa;
    s.kappa_was_calibrated = true;
  }
  s.params.validate();
  return s;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + path.string());
  os << content;
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

void finish_report(RunReport& report, const Session& session, const CliOptions& opts) {
  report.add("kappa", session.kappa);
  report.add("kappa_was_calibrated", session.kappa_was_calibrated ? 1.0 : 0.0);
  report.add("grid_scale", opts.grid_scale);
  // informational figures of merit: storage-time-limit times bandwidth, and
  // the bandwidth-to-linewidth ratio (reported, not asserted; the width
  // convention that would pin it is not fixed by the source experiment)
  report.add("time_bandwidth_product", session.config.metadata.coherence_time_us * 1e-6 *
                                           session.config.metadata.bandwidth_ghz * 1e9);
  report.add("bandwidth_to_linewidth_ratio",
             session.config.metadata.bandwidth_ghz * 1e9 / session.config.physical.gamma_hz);
  report.config_echo = session.config.flatten();

  std::filesystem::create_directories(opts.out_dir);
  const std::filesystem::path out(opts.out_dir);
  std::ostringstream body;
  if (opts.format == "json") {
    emit_json(report, body);
    write_text_file(out / "report.json", body.str());
  } else if (opts.format == "csv") {
    emit_csv(report, body);
    write_text_file(out / "report.csv", body.str());
  } else {
    throw ConfigError("unsupported --format '" + opts.format + "' (use csv or json)");
  }
}

struct MemoryRun {
  ControlProfile write_control;
  ControlProfile read_control;
  ComplexEnvelope a_in;
  SpinWaveProfile b_mem;
  SpinWaveProfile b_read;  // after storage-time decay
  ComplexEnvelope a_trans;
  ComplexEnvelope a_out;
  EfficiencyReport report;
};

MemoryRun run_memory(const Session& s, bool with_transmit = true) {
  MemoryRun run;
  run.write_control =
      build_control(s.params, s.tgrid, s.config.pulse.control_center_ns * 1e-9);
  PhysicalParams read_params = s.params;
  if (s.config.pulse.read_energy_nj >= 0.0)
    read_params.pulse_energy = s.config.pulse.read_energy_nj * 1e-9;
  run.read_control =
      build_control(read_params, s.tgrid, s.config.pulse.control_center_ns * 1e-9);

  run.a_in = gaussian_signal(s.params, s.tgrid, s.config.pulse.control_center_ns * 1e-9);
  run.b_mem = store(run.a_in, run.write_control, s.zgrid);
  run.a_trans = with_transmit ? transmit(run.a_in, run.write_control) : run.a_in;
  run.b_read = spinwave_decay(run.b_mem, s.params.storage_time, s.params.spin_decay);
  run.a_out = retrieve(run.b_read, run.read_control, Direction::forward);
  run.report = efficiencies(run.a_in, run.a_trans, run.b_mem, run.a_out);
  return run;
}

ComplexEnvelope reference_arm(const Session& s, const MemoryRun& run) {
  const double delay = (s.config.experiment.etalon_delay_ps +
                        s.config.experiment.reference_arm_delay_ps) *
                       1e-12;
  return etalon_adjust(run.a_in, delay, s.config.experiment.etalon_stretch);
}

int cmd_simulate(const CliOptions& opts) {
  Session s = open_session(opts);
  MemoryRun run = run_memory(s);

  RunReport report;
  report.subcommand = "simulate";
  report.add("coupling_C", run.write_control.coupling);
  report.add("rabi_integral_W", run.write_control.rabi_integral);
  report.add("stark_twist_rad", run.write_control.rabi_integral / s.params.detuning);
  report.add("n_in", run.report.n_in);
  report.add("n_mem", run.report.n_mem);
  report.add("n_trans", run.report.n_trans);
  report.add("n_out", run.report.n_out);
  report.add("eta_store", run.report.eta_store);
  report.add("eta_tot", run.report.eta_tot);
  if (run.report.eta_ret) report.add("eta_ret", *run.report.eta_ret);
  report.add("transmission", run.report.n_trans / run.report.n_in);
  report.add("closure_residual", run.report.closure_residual);

  const Visibility vis = overlap_visibility(reference_arm(s, run), run.a_out);
  run.report.visibility = vis.balanced;
  report.add("visibility_balanced", vis.balanced);
  report.add("visibility_raw", vis.raw);

  // traces, detector-convolved like the published storage/retrieval figure
  const double response = s.config.experiment.detector_response_fwhm_ns * 1e-9;
  IntensityTrace in_raw = intensity(run.a_in);
  IntensityTrace trans_raw = intensity(run.a_trans);
  IntensityTrace out_raw = intensity(run.a_out);
  IntensityTrace in_det = detector_convolve(run.a_in, response);
  IntensityTrace trans_det = detector_convolve(run.a_trans, response);
  IntensityTrace out_det = detector_convolve(run.a_out, response);

  report.add("retrieved_fwhm_raw_ns", out_raw.fwhm() * 1e9);
  report.add("retrieved_fwhm_detected_ns", out_det.fwhm() * 1e9);

  std::ostringstream trace;
  trace << "time_ns,window,input,transmitted,retrieved,detected_input,detected_transmitted,"
           "detected_retrieved\n";
  for (std::size_t i = 0; i < s.tgrid.n_points; ++i) {
    trace << format_number(s.tgrid.at(i) * 1e9) << ",write," << format_number(in_raw.values[i])
          << ',' << format_number(trans_raw.values[i]) << ",0,"
          << format_number(in_det.values[i]) << ',' << format_number(trans_det.values[i])
          << ",0\n";
  }
  for (std::size_t i = 0; i < s.tgrid.n_points; ++i) {
    trace << format_number((s.tgrid.at(i) + s.params.storage_time) * 1e9) << ",read,0,0,"
          << format_number(out_raw.values[i]) << ",0,0," << format_number(out_det.values[i])
          << '\n';
  }
  std::filesystem::create_directories(opts.out_dir);
  write_text_file(std::filesystem::path(opts.out_dir) / "traces.csv", trace.str());

  finish_report(report, s, opts);
  return kExitOk;
}

int cmd_sweep(const CliOptions& opts) {
  Session s = open_session(opts);
  SweepTable table = efficiency_sweep(s.params, s.tgrid, s.zgrid, s.config.sweep.energies_nj);

  std::filesystem::create_directories(opts.out_dir);
  std::ostringstream csv;
  table.write_csv(csv);
  write_text_file(std::filesystem::path(opts.out_dir) / "sweep.csv", csv.str());

  RunReport report;
  report.subcommand = "sweep";
  report.add("rows", static_cast<double>(table.rows.size()));
  for (const auto& row : table.rows) {
    if (row.energy_nj == s.config.calibration.target_energy_nj) {
      report.add("eta_store_at_target", row.eta_store.value_or(0.0));
      report.add("eta_tot_at_target", row.eta_tot.value_or(0.0));
      if (row.eta_ret) report.add("eta_ret_at_target", *row.eta_ret);
    }
  }
  finish_report(report, s, opts);
  return kExitOk;
}

int cmd_optimize(const CliOptions& opts) {
  Session s = open_session(opts);
  SweepTable table =
      bounds_curve(s.params, s.tgrid, s.zgrid, s.config.optimize.energies_nj,
                   s.config.optimize.sigma_tol, static_cast<int>(s.config.optimize.max_iterations));

  std::filesystem::create_directories(opts.out_dir);
  std::ostringstream csv;
  table.write_csv(csv);
  write_text_file(std::filesystem::path(opts.out_dir) / "bounds.csv", csv.str());

  // optimal input modes at the largest swept energy
  PhysicalParams p = s.params;
  p.pulse_energy = s.config.optimize.energies_nj.back() * 1e-9;
  ControlProfile ctrl = build_control(p, s.tgrid, s.config.pulse.control_center_ns * 1e-9);
  DominantMode fwd = dominant_mode(build_map(MapKind::total_forward, ctrl, s.zgrid),
                                   s.config.optimize.sigma_tol,
                                   static_cast<int>(s.config.optimize.max_iterations));
  DominantMode bwd = dominant_mode(build_map(MapKind::total_backward, ctrl, s.zgrid),
                                   s.config.optimize.sigma_tol,
                                   static_cast<int>(s.config.optimize.max_iterations));
  std::ostringstream modes;
  modes << "time_ns,fwd_mode_intensity,fwd_mode_phase,bwd_mode_intensity,bwd_mode_phase\n";
  const double ht = s.tgrid.spacing();
  for (std::size_t i = 0; i < s.tgrid.n_points; ++i) {
    // unweight so the columns are physical field samples
    const double w = std::sqrt(trapezoid_weight(i, s.tgrid.n_points, ht));
    const std::complex<double> vf = fwd.input_mode(static_cast<Eigen::Index>(i)) / w;
    const std::complex<double> vb = bwd.input_mode(static_cast<Eigen::Index>(i)) / w;
    modes << format_number(s.tgrid.at(i) * 1e9) << ',' << format_number(std::norm(vf)) << ','
          << format_number(std::arg(vf)) << ',' << format_number(std::norm(vb)) << ','
          << format_number(std::arg(vb)) << '\n';
  }
  write_text_file(std::filesystem::path(opts.out_dir) / "optimal_modes.csv", modes.str());

  // plateau detection: first energy where the forward bound moves by less
  // than the configured percentage points per nJ
  RunReport report;
  report.subcommand = "optimize";
  double plateau_energy = -1.0;
  double plateau_value = 0.0;
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    const double de = table.rows[i].energy_nj - table.rows[i - 1].energy_nj;
    const double dfwd = (*table.rows[i].eta_opt_fwd - *table.rows[i - 1].eta_opt_fwd) * 100.0;
    if (table.rows[i].energy_nj >= s.config.calibration.target_energy_nj &&
        std::abs(dfwd) / de < s.config.optimize.plateau_slope_pp_per_nj) {
      plateau_energy = table.rows[i].energy_nj;
      plateau_value = *table.rows[i].eta_opt_fwd;
      break;
    }
  }
  report.add("eta_opt_fwd_max", *table.rows.back().eta_opt_fwd);
  report.add("eta_opt_bwd_max", *table.rows.back().eta_opt_bwd);
  report.add("plateau_energy_nj", plateau_energy);
  report.add("eta_opt_fwd_plateau", plateau_value);
  report.add("sigma_fwd_iterations", fwd.iterations);
  report.add("sigma_bwd_iterations", bwd.iterations);
  finish_report(report, s, opts);
  return kExitOk;
}

int cmd_visibility(const CliOptions& opts) {
  Session s = open_session(opts);
  MemoryRun run = run_memory(s, /*with_transmit=*/false);
  const ComplexEnvelope reference = reference_arm(s, run);

  const Visibility vis = overlap_visibility(reference, run.a_out);

  const double lambda = s.config.experiment.fringe_wavelength_nm * 1e-9;
  std::vector<double> positions;
  const std::size_t n_pos = s.config.experiment.fringe_positions;
  for (std::size_t i = 0; i < n_pos; ++i)
    positions.push_back(s.config.experiment.fringe_span_wavelengths * lambda *
                        static_cast<double>(i) / static_cast<double>(n_pos - 1));
  const double mean_level = reference.photon_number() + run.a_out.photon_number();
  FringeScan scan =
      synthesize_fringes(reference, run.a_out, positions, lambda,
                         s.config.experiment.fringe_noise_sd * mean_level,
                         s.config.experiment.fringe_seed);
  FringeFit fit = fit_fringes(scan, lambda);

  std::filesystem::create_directories(opts.out_dir);
  std::ostringstream fringe_csv;
  fringe_csv << "position_m,intensity\n";
  for (std::size_t i = 0; i < scan.positions.size(); ++i)
    fringe_csv << format_number(scan.positions[i]) << ','
               << format_number(scan.intensities[i]) << '\n';
  write_text_file(std::filesystem::path(opts.out_dir) / "fringes.csv", fringe_csv.str());

  RunReport report;
  report.subcommand = "visibility";
  report.add("coupling_C", run.write_control.coupling);
  report.add("eta_store", run.report.eta_store);
  report.add("eta_tot", run.report.eta_tot);
  report.add("visibility_balanced", vis.balanced);
  report.add("visibility_raw", vis.raw);
  report.add("visibility_corrected", vis.balanced / s.config.experiment.visibility_benchmark);
  report.add("fringe_fit_visibility", fit.visibility);
  report.add("fringe_fit_phase", fit.phase);
  report.add("fringe_fit_mean_intensity", fit.mean_intensity);
  report.add("fringe_fit_period", fit.period);
  report.add("fringe_fit_residual_norm", fit.residual_norm);
  finish_report(report, s, opts);
  return kExitOk;
}

int cmd_validate(const CliOptions& opts) {
  Session s = open_session(opts);
  RunReport report;
  report.subcommand = "validate";
  bool all_pass = true;

  auto check = [&](const std::string& name, bool pass, double value) {
    report.add(name, value);
    report.add(name + "_pass", pass ? 1.0 : 0.0);
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << " = " << format_number(value) << "\n";
    all_pass = all_pass && pass;
  };

  // zero-control identity
  {
    PhysicalParams p = s.params;
    p.pulse_energy = 0.0;
    ControlProfile ctrl = build_control(p, s.tgrid, 0.0);
    ComplexEnvelope a_in = gaussian_signal(p, s.tgrid);
    ComplexEnvelope a_tr = transmit(a_in, ctrl);
    SpinWaveProfile b = store(a_in, ctrl, s.zgrid);
    const double trans = a_tr.photon_number() / a_in.photon_number();
    check("zero_control_transmission_error", std::abs(trans - 1.0) <= 1e-12,
          std::abs(trans - 1.0));
    check("zero_control_eta_store", b.excitation_number() == 0.0, b.excitation_number());
  }

  // kernel-path closure across couplings
  for (double c : {0.5, 1.0, 2.0, 5.0}) {
    PhysicalParams p = s.params;
    p.kappa = c * c * p.detuning * p.detuning / (p.optical_depth * p.gamma * p.pulse_energy);
    ControlProfile ctrl = build_control(p, s.tgrid, 0.0);
    ComplexEnvelope a_in = gaussian_signal(p, s.tgrid);
    SpinWaveProfile b = store(a_in, ctrl, s.zgrid);
    ComplexEnvelope a_tr = transmit(a_in, ctrl);
    const double n_in = a_in.photon_number();
    const double res = std::abs((n_in - b.excitation_number() - a_tr.photon_number()) / n_in);
    check("closure_residual_C" + format_number(c), res <= 1e-4, res);
  }

  // kernel vs direct Maxwell-Bloch integration
  for (double c : {0.5, 1.0, 2.0}) {
    PhysicalParams p = s.params;
    p.kappa = c * c * p.detuning * p.detuning / (p.optical_depth * p.gamma * p.pulse_energy);
    ControlProfile ctrl = build_control(p, s.tgrid, 0.0);
    ComplexEnvelope a_in = gaussian_signal(p, s.tgrid);
    SpinWaveProfile b_kernel = store(a_in, ctrl, s.zgrid);
    PropagationResult oracle = propagate(a_in, ctrl, s.zgrid, {Scheme::order4, false});
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < b_kernel.values.size(); ++i) {
      num += std::norm(oracle.b_field.values[i] - b_kernel.values[i]);
      den += std::norm(b_kernel.values[i]);
    }
    const double rel = std::sqrt(num / den);
    check("kernel_oracle_l2_C" + format_number(c), rel <= 1e-3, rel);
    if (c == 1.0) {
      const double res = std::abs(energy_residual(oracle, a_in));
      check("oracle_energy_residual_C1", res <= 1e-4, res);
      if (!opts.snapshot_path.empty()) {
        PropagationResult snap = propagate(a_in, ctrl, s.zgrid, {Scheme::order2, true});
        write_snapshot(opts.snapshot_path, *snap.snapshot);
        report.add("snapshot_written", 1.0);
      }
    }
  }

  // map passivity at the calibrated operating point
  {
    ControlProfile ctrl = build_control(s.params, s.tgrid, 0.0);
    DominantMode mode = dominant_mode(build_map(MapKind::storage, ctrl, s.zgrid), 1e-9,
                                      static_cast<int>(s.config.optimize.max_iterations));
    check("storage_sigma_max", mode.sigma <= 1.0 + 1e-6, mode.sigma);
  }

  finish_report(report, s, opts);
  std::cout << (all_pass ? "validate: PASS" : "validate: FAIL") << "\n";
  return all_pass ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Broadband Raman quantum memory simulator and optimizer"};
  app.require_subcommand(1);

  CliOptions opts;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opts.config_path, "Config file (sectioned key=value)");
    cmd->add_option("--set", opts.overrides, "Override, e.g. physical.optical_depth=900")
        ->take_all();
    cmd->add_option("--out", opts.out_dir, "Output directory (default: out)");
    cmd->add_option("--format", opts.format, "Report format: csv or json (default: json)");
    cmd->add_option("--grid-scale", opts.grid_scale,
                    "Uniform grid refinement multiplier for convergence studies");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "Single storage/retrieval run with traces");
  CLI::App* sweep = app.add_subcommand("sweep", "Efficiency vs write/read pulse energy");
  CLI::App* optimize = app.add_subcommand("optimize", "Optimal-mode efficiency bounds");
  CLI::App* visibility = app.add_subcommand("visibility", "Interferometric visibility pipeline");
  CLI::App* validate = app.add_subcommand("validate", "Kernel-vs-oracle and conservation checks");
  for (CLI::App* cmd : {simulate, sweep, optimize, visibility, validate}) add_common(cmd);
  validate->add_option("--dump-snapshot", opts.snapshot_path,
                       "Write the C=1 oracle (z,u) field history to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (app.exit(e) == 0) return kExitOk;
    std::cerr << error_json("cli", e.what(), kExitConfig) << "\n";
    return kExitConfig;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(opts);
    if (sweep->parsed()) return cmd_sweep(opts);
    if (optimize->parsed()) return cmd_optimize(opts);
    if (visibility->parsed()) return cmd_visibility(opts);
    if (validate->parsed()) return cmd_validate(opts);
  } catch (const ConfigError& e) {
    std::cerr << error_json("config", e.what(), kExitConfig) << "\n";
    return kExitConfig;
  } catch (const CalibrationError& e) {
    std::cerr << error_json("calibration", e.what(), kExitCalibration) << "\n";
    return kExitCalibration;
  } catch (const std::exception& e) {
    std::cerr << error_json("numerical", e.what(), kExitNumerical) << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
