#pragma once

#include <cstddef>
#include <vector>

namespace bresse {

/// Uniform mesh of (0, L). Node 0 carries the boundary feedback, node N the
/// clamped end.
struct Grid {
  double length = 1.0;
  std::size_t elements = 1;

  double h() const { return length / static_cast<double>(elements); }
  std::size_t node_count() const { return elements + 1; }
  double node(std::size_t j) const { return static_cast<double>(j) * h(); }
  std::vector<double> nodes() const;
};

/// Throws std::invalid_argument for N = 0 or L <= 0.
Grid build_grid(double length, std::size_t elements);

}  // namespace bresse
