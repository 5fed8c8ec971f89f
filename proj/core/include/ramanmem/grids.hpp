#pragma once

#include <cstddef>
#include <vector>

#include "ramanmem/errors.hpp"

namespace ramanmem {

/// Uniform time grid, endpoints inclusive.
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 0.0;
  std::size_t n_points = 0;

  TimeGrid() = default;
  TimeGrid(double start, double end, std::size_t n) : t_start(start), t_end(end), n_points(n) {
    if (n < 2) throw GridError("TimeGrid requires at least 2 points");
    if (!(end > start)) throw GridError("TimeGrid requires t_end > t_start");
  }

  double spacing() const { return (t_end - t_start) / static_cast<double>(n_points - 1); }
  double at(std::size_t i) const { return t_start + spacing() * static_cast<double>(i); }
  double span() const { return t_end - t_start; }

  bool operator==(const TimeGrid& o) const {
    return t_start == o.t_start && t_end == o.t_end && n_points == o.n_points;
  }
};

/// Uniform depth grid on [0, 1]; z = 1 is the exit face of the ensemble.
struct DepthGrid {
  std::size_t n_points = 0;

  DepthGrid() = default;
  explicit DepthGrid(std::size_t n) : n_points(n) {
    if (n < 2) throw GridError("DepthGrid requires at least 2 points");
  }

  double spacing() const { return 1.0 / static_cast<double>(n_points - 1); }
  double at(std::size_t i) const { return spacing() * static_cast<double>(i); }

  bool operator==(const DepthGrid& o) const { return n_points == o.n_points; }
};

}  // namespace ramanmem
