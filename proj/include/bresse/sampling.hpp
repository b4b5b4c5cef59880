#pragma once

#include <cstdint>

#include "bresse/grid.hpp"
#include "bresse/state.hpp"

namespace bresse {

/// Interior bump data: each of the six fields is a random multiple of a
/// C-infinity bump supported in (0.05 L, 0.95 L), modulated by a random
/// low-frequency cosine. Compatible with the boundary conditions at both ends,
/// so almost no energy lands in under-resolved modes.
RealState smooth_initial_state(const Grid& grid, std::uint64_t seed);

/// Smooth load F with every component vanishing at x = L:
/// f_i(x) = (L - x)(a_i + b_i cos(pi c_i x / L)), random a, b, c.
/// The same seed gives the same underlying functions on every grid.
RealState smooth_load(const Grid& grid, std::uint64_t seed);

/// Uniformly random nodal entries in [-1, 1].
RealState random_state(Eigen::Index dofs, std::uint64_t seed);
ComplexState random_complex_state(Eigen::Index dofs, std::uint64_t seed);

}  // namespace bresse
