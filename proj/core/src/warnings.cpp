#include "ramanmem/warnings.hpp"

#include <iostream>

namespace ramanmem {

namespace {
thread_local std::vector<std::string>* g_sink = nullptr;
}

void emit_warning(const std::string& message) {
  if (g_sink) {
    g_sink->push_back(message);
  } else {
    std::cerr << "warning: " << message << "\n";
  }
}

std::vector<std::string> capture_warnings(const std::function<void()>& fn) {
  std::vector<std::string> captured;
  std::vector<std::string>* previous = g_sink;
  g_sink = &captured;
  try {
    fn();
  } catch (...) {
    g_sink = previous;
    throw;
  }
  g_sink = previous;
  return captured;
}

}  // namespace ramanmem
