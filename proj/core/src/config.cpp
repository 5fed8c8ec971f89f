#include "ramanmem/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ramanmem/errors.hpp"

namespace ramanmem {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid numeric value for '" + key + "': '" + value + "'");
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer value for '" + key + "': '" + value + "'");
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw ConfigError("empty list for '" + key + "'");
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string format_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_double(v[i]);
  }
  return out;
}

// Field table: one setter/getter pair per "section.key". Keeps parse,
// override, and echo in lockstep.
struct Field {
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define NUM_FIELD(path)                                                          \
  Field{[](RunConfig& c, const std::string& k, const std::string& v) { c.path = parse_double(k, v); }, \
        [](const RunConfig& c) { return format_double(c.path); }}
#define UINT_FIELD(path, type)                                                   \
  Field{[](RunConfig& c, const std::string& k, const std::string& v) {           \
          c.path = static_cast<type>(parse_uint(k, v));                          \
        },                                                                       \
        [](const RunConfig& c) { return std::to_string(c.path); }}
#define LIST_FIELD(path)                                                         \
  Field{[](RunConfig& c, const std::string& k, const std::string& v) { c.path = parse_list(k, v); }, \
        [](const RunConfig& c) { return format_list(c.path); }}
#define STR_FIELD(path)                                                          \
  Field{[](RunConfig& c, const std::string&, const std::string& v) { c.path = v; }, \
        [](const RunConfig& c) { return c.path; }}

const std::vector<std::pair<std::string, Field>>& field_table() {
  static const std::vector<std::pair<std::string, Field>> table = {
      {"physical.optical_depth", NUM_FIELD(physical.optical_depth)},
      {"physical.gamma_hz", NUM_FIELD(physical.gamma_hz)},
      {"physical.gamma_convention", STR_FIELD(physical.gamma_convention)},
      {"physical.detuning_ghz", NUM_FIELD(physical.detuning_ghz)},
      {"physical.pulse_energy_nj", NUM_FIELD(physical.pulse_energy_nj)},
      {"physical.kappa", NUM_FIELD(physical.kappa)},
      {"physical.control_fwhm_ps", NUM_FIELD(physical.control_fwhm_ps)},
      {"physical.signal_fwhm_ps", NUM_FIELD(physical.signal_fwhm_ps)},
      {"physical.signal_delay_ps", NUM_FIELD(physical.signal_delay_ps)},
      {"physical.storage_time_ns", NUM_FIELD(physical.storage_time_ns)},
      {"physical.spin_decay_per_s", NUM_FIELD(physical.spin_decay_per_s)},
      {"grid.t_start_ns", NUM_FIELD(grid.t_start_ns)},
      {"grid.t_end_ns", NUM_FIELD(grid.t_end_ns)},
      {"grid.n_time", UINT_FIELD(grid.n_time, std::uint32_t)},
      {"grid.n_depth", UINT_FIELD(grid.n_depth, std::uint32_t)},
      {"pulse.control_center_ns", NUM_FIELD(pulse.control_center_ns)},
      {"pulse.read_energy_nj", NUM_FIELD(pulse.read_energy_nj)},
      {"calibration.target_energy_nj", NUM_FIELD(calibration.target_energy_nj)},
      {"calibration.target_eta_store", NUM_FIELD(calibration.target_eta_store)},
      {"sweep.energies_nj", LIST_FIELD(sweep.energies_nj)},
      {"optimize.energies_nj", LIST_FIELD(optimize.energies_nj)},
      {"optimize.sigma_tol", NUM_FIELD(optimize.sigma_tol)},
      {"optimize.max_iterations", UINT_FIELD(optimize.max_iterations, std::uint32_t)},
      {"optimize.plateau_slope_pp_per_nj", NUM_FIELD(optimize.plateau_slope_pp_per_nj)},
      {"experiment.etalon_delay_ps", NUM_FIELD(experiment.etalon_delay_ps)},
      {"experiment.etalon_stretch", NUM_FIELD(experiment.etalon_stretch)},
      {"experiment.reference_arm_delay_ps", NUM_FIELD(experiment.reference_arm_delay_ps)},
      {"experiment.detector_response_fwhm_ns", NUM_FIELD(experiment.detector_response_fwhm_ns)},
      {"experiment.fringe_wavelength_nm", NUM_FIELD(experiment.fringe_wavelength_nm)},
      {"experiment.fringe_positions", UINT_FIELD(experiment.fringe_positions, std::uint32_t)},
      {"experiment.fringe_span_wavelengths", NUM_FIELD(experiment.fringe_span_wavelengths)},
      {"experiment.fringe_noise_sd", NUM_FIELD(experiment.fringe_noise_sd)},
      {"experiment.fringe_seed", UINT_FIELD(experiment.fringe_seed, std::uint64_t)},
      {"experiment.visibility_benchmark", NUM_FIELD(experiment.visibility_benchmark)},
      {"metadata.wavelength_nm", NUM_FIELD(metadata.wavelength_nm)},
      {"metadata.sideband_ghz", NUM_FIELD(metadata.sideband_ghz)},
      {"metadata.beam_waist_um", NUM_FIELD(metadata.beam_waist_um)},
      {"metadata.cell_length_cm", NUM_FIELD(metadata.cell_length_cm)},
      {"metadata.cell_temperature_c", NUM_FIELD(metadata.cell_temperature_c)},
      {"metadata.coherence_time_us", NUM_FIELD(metadata.coherence_time_us)},
      {"metadata.bandwidth_ghz", NUM_FIELD(metadata.bandwidth_ghz)},
  };
  return table;
}

#undef NUM_FIELD
#undef UINT_FIELD
#undef LIST_FIELD
#undef STR_FIELD

const Field* find_field(const std::string& dotted) {
  for (const auto& [name, field] : field_table())
    if (name == dotted) return &field;
  return nullptr;
}

}  // namespace

PhysicalParams RunConfig::physical_params() const {
  PhysicalParams p;
  p.optical_depth = physical.optical_depth;
  if (physical.gamma_convention == "hwhm") {
    p.gamma = 2.0 * M_PI * physical.gamma_hz;
  } else if (physical.gamma_convention == "fwhm") {
    p.gamma = M_PI * physical.gamma_hz;
  } else {
    throw ConfigError("physical.gamma_convention must be 'hwhm' or 'fwhm', got '" +
                      physical.gamma_convention + "'");
  }
  p.detuning = 2.0 * M_PI * physical.detuning_ghz * 1e9;
  p.pulse_energy = physical.pulse_energy_nj * 1e-9;
  p.kappa = physical.kappa;
  p.control_fwhm = physical.control_fwhm_ps * 1e-12;
  p.signal_fwhm = physical.signal_fwhm_ps * 1e-12;
  p.signal_delay = physical.signal_delay_ps * 1e-12;
  p.storage_time = physical.storage_time_ns * 1e-9;
  p.spin_decay = physical.spin_decay_per_s;
  return p;
}

TimeGrid RunConfig::time_grid(std::uint32_t grid_scale) const {
  if (grid_scale == 0) throw ConfigError("grid scale must be >= 1");
  return TimeGrid(grid.t_start_ns * 1e-9, grid.t_end_ns * 1e-9, grid.n_time * grid_scale);
}

DepthGrid RunConfig::depth_grid(std::uint32_t grid_scale) const {
  if (grid_scale == 0) throw ConfigError("grid scale must be >= 1");
  return DepthGrid(grid.n_depth * grid_scale);
}

std::vector<std::pair<std::string, std::string>> RunConfig::flatten() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(field_table().size());
  for (const auto& [name, field] : field_table()) out.emplace_back(name, field.get(*this));
  return out;
}

RunConfig parse_config_text(const std::string& text, const RunConfig& base) {
  RunConfig config = base;
  std::stringstream ss(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                        "' outside any [section]");
    const std::string dotted = section + "." + key;
    const Field* field = find_field(dotted);
    if (!field)
      throw ConfigError("line " + std::to_string(line_no) + ": unknown setting '" + dotted + "'");
    field->set(config, dotted, value);
  }
  return config;
}

RunConfig parse_config_file(const std::string& path, const RunConfig& base) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << is.rdbuf();
  return parse_config_text(buffer.str(), base);
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must look like section.key=value: '" + assignment + "'");
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  const Field* field = find_field(key);
  if (!field) throw ConfigError("unknown setting in override: '" + key + "'");
  field->set(config, key, value);
}

}  // namespace ramanmem
