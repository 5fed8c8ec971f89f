#include "ramanmem/report.hpp"

#include <cstdio>

namespace ramanmem {

namespace {

std::string escape_json(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::optional<double> RunReport::find(const std::string& key) const {
  for (const auto& [k, v] : results)
    if (k == key) return v;
  return std::nullopt;
}

void emit_json(const RunReport& report, std::ostream& os) {
  os << "{\n";
  os << "  \"schema\": \"" << RunReport::kSchemaId << "\",\n";
  os << "  \"subcommand\": \"" << escape_json(report.subcommand) << "\",\n";
  os << "  \"results\": {\n";
  for (std::size_t i = 0; i < report.results.size(); ++i) {
    os << "    \"" << escape_json(report.results[i].first)
       << "\": " << format_number(report.results[i].second);
    os << (i + 1 < report.results.size() ? ",\n" : "\n");
  }
  os << "  },\n";
  os << "  \"config\": {\n";
  for (std::size_t i = 0; i < report.config_echo.size(); ++i) {
    os << "    \"" << escape_json(report.config_echo[i].first) << "\": \""
       << escape_json(report.config_echo[i].second) << "\"";
    os << (i + 1 < report.config_echo.size() ? ",\n" : "\n");
  }
  os << "  }\n";
  os << "}\n";
}

void emit_csv(const RunReport& report, std::ostream& os) {
  os << "key,value\n";
  os << "schema," << RunReport::kSchemaId << "\n";
  os << "subcommand," << report.subcommand << "\n";
  for (const auto& [k, v] : report.results) os << k << ',' << format_number(v) << '\n';
  for (const auto& [k, v] : report.config_echo) os << "config." << k << ',' << v << '\n';
}

std::string error_json(const std::string& kind, const std::string& message, int exit_code) {
  std::string out = "{\"error\":{\"kind\":\"" + escape_json(kind) + "\",\"message\":\"" +
                    escape_json(message) + "\",\"exit_code\":" + std::to_string(exit_code) + "}}";
  return out;
}

}  // namespace ramanmem
