#pragma once

#include <stdexcept>
#include <string>

namespace ramanmem {

// Error taxonomy used for CLI exit codes: ConfigError -> 2,
// GridError/NumericsError -> 3, CalibrationError -> 4.

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class GridError : public std::runtime_error {
public:
  explicit GridError(const std::string& msg) : std::runtime_error(msg) {}
};

class NumericsError : public std::runtime_error {
public:
  explicit NumericsError(const std::string& msg) : std::runtime_error(msg) {}
};

class ConvergenceError : public NumericsError {
public:
  explicit ConvergenceError(const std::string& msg) : NumericsError(msg) {}
};

class CalibrationError : public std::runtime_error {
public:
  explicit CalibrationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ramanmem
