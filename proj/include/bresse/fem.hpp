#pragma once

#include <array>
#include <cstddef>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "bresse/grid.hpp"
#include "bresse/model.hpp"

namespace bresse {

using SparseMat = Eigen::SparseMatrix<double>;

enum class Field : int { phi = 0, psi = 1, w = 2 };

/// Dof layout [phi_0..phi_{N-1}, psi_0..psi_{N-1}, w_0..w_{N-1}]; the clamped
/// node x_N = L is eliminated.
inline Eigen::Index dof(Field f, std::size_t node, std::size_t elements) {
  return static_cast<Eigen::Index>(static_cast<std::size_t>(f) * elements + node);
}

enum class MassKind { consistent, lumped };

/// M, K, D of the quadratic pencil lambda^2 M + lambda D + K plus the rows of
/// the clamped node, which recover the end reaction of a Galerkin solution.
struct FemSystem {
  BresseParams params;
  Grid grid;
  MassKind mass_kind = MassKind::consistent;
  SparseMat M;
  SparseMat K;
  SparseMat D;
  SparseMat M_end;  // 3 x 3N: rows of the eliminated x = L dofs
  SparseMat K_end;

  Eigen::Index size() const { return M.rows(); }
  std::size_t elements() const { return grid.elements; }
};

/// Mass, stiffness and damping of a single scalar block, used when a field
/// decouples (ell = 0).
struct Pencil {
  SparseMat M;
  SparseMat K;
  SparseMat D;
};

SparseMat assemble_mass(const BresseParams& p, const Grid& grid, MassKind kind = MassKind::consistent);

/// Gram matrix of
///   B(u, v) = kappa (phi_x+psi+ell w, .) + b (psi_x, .) + k0 (w_x - ell phi, .)
/// over piecewise-linear elements, integrated exactly.
SparseMat assemble_stiffness(const BresseParams& p, const Grid& grid);

SparseMat assemble_damping(const BresseParams& p, const Grid& grid);

FemSystem build_system(const BresseParams& p, std::size_t elements,
                       MassKind kind = MassKind::consistent);

/// Smallest eigenvalue of K (dense symmetric solve). Throws Error if the
/// eigensolver fails to converge.
double check_coercivity(const SparseMat& K);

/// Smallest generalized eigenvalue of (K, M_unit) where M_unit is the L2 Gram
/// matrix. This is the discrete coercivity constant of B and is mesh-stable.
double coercivity_constant(const FemSystem& sys);

/// Extracts the block of one field. Throws std::invalid_argument when the
/// field is coupled to the others (ell != 0).
Pencil restrict_to_field(const FemSystem& sys, Field f);

Pencil full_pencil(const FemSystem& sys);

/// Expands 3N reduced dofs into nodal fields on all N+1 nodes, zero at x = L.
template <class Vec>
std::array<Eigen::Matrix<typename Vec::Scalar, Eigen::Dynamic, 1>, 3> to_nodal(
    const Vec& reduced, std::size_t elements) {
  using Scalar = typename Vec::Scalar;
  std::array<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>, 3> out;
  const auto n = static_cast<Eigen::Index>(elements);
  for (int f = 0; f < 3; ++f) {
    out[f] = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n + 1);
    out[f].head(n) = reduced.segment(f * n, n);
  }
  return out;
}

}  // namespace bresse
