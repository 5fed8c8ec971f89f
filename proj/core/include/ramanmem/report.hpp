#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace ramanmem {

/// Flat, ordered run report. Serialization is bit-stable: fixed field order,
/// fixed 12-significant-digit float formatting; identical runs produce
/// byte-identical artifacts.
struct RunReport {
  static constexpr const char* kSchemaId = "ramanmem-report-v1";

  std::string subcommand;
  std::vector<std::pair<std::string, double>> results;               // insertion-ordered
  std::vector<std::pair<std::string, std::string>> config_echo;      // insertion-ordered

  void add(const std::string& key, double value) { results.emplace_back(key, value); }
  std::optional<double> find(const std::string& key) const;
};

/// %.12g, the one float format every emitter uses.
std::string format_number(double value);

void emit_json(const RunReport& report, std::ostream& os);
void emit_csv(const RunReport& report, std::ostream& os);

/// Single-line machine-readable error object written to stderr by the CLI.
std::string error_json(const std::string& kind, const std::string& message, int exit_code);

}  // namespace ramanmem
