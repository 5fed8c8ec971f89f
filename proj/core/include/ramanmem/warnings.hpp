#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ramanmem {

// Non-fatal diagnostics (grid truncation, adiabaticity, ...) go through a
// thread-local sink so callers and tests can capture them. Default sink
// prints to stderr.

void emit_warning(const std::string& message);

// Runs fn with warnings redirected into the returned vector.
std::vector<std::string> capture_warnings(const std::function<void()>& fn);

}  // namespace ramanmem
