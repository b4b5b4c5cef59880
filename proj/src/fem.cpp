#include "bresse/fem.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "bresse/errors.hpp"

namespace bresse {

std::vector<double> Grid::nodes() const {
  std::vector<double> x(node_count());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = node(j);
  return x;
}

Grid build_grid(double length, std::size_t elements) {
  if (elements == 0) throw std::invalid_argument("build_grid: element count must be at least 1");
  if (!(length > 0.0)) throw std::invalid_argument("build_grid: length must be positive");
  return Grid{length, elements};
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

constexpr std::array<double, 2> kGaussPoints{0.5 - 0.5 / 1.7320508075688772,
                                             0.5 + 0.5 / 1.7320508075688772};

// Unreduced index over all N+1 nodes of each field.
Eigen::Index full_index(int field, std::size_t node, std::size_t elements) {
  return static_cast<Eigen::Index>(static_cast<std::size_t>(field) * (elements + 1) + node);
}

// Element matrices with local ordering (phi_a, phi_b, psi_a, psi_b, w_a, w_b).
using ElementMatrix = Eigen::Matrix<double, 6, 6>;

ElementMatrix element_stiffness(const BresseParams& p, double h) {
  ElementMatrix ke = ElementMatrix::Zero();
  for (double xi : kGaussPoints) {
    const std::array<double, 2> shape{1.0 - xi, xi};
    const std::array<double, 2> slope{-1.0 / h, 1.0 / h};
    Eigen::Matrix<double, 1, 6> shear = Eigen::Matrix<double, 1, 6>::Zero();
    Eigen::Matrix<double, 1, 6> bend = Eigen::Matrix<double, 1, 6>::Zero();
    Eigen::Matrix<double, 1, 6> axial = Eigen::Matrix<double, 1, 6>::Zero();
    for (int a = 0; a < 2; ++a) {
      shear(a) = slope[a];
      shear(2 + a) = shape[a];
      shear(4 + a) = p.ell * shape[a];
      bend(2 + a) = slope[a];
      axial(4 + a) = slope[a];
      axial(a) = -p.ell * shape[a];
    }
    ke += 0.5 * h *
          (p.kappa * shear.transpose() * shear + p.b * bend.transpose() * bend +
           p.k0 * axial.transpose() * axial);
  }
  return ke;
}

ElementMatrix element_mass(const BresseParams& p, double h, MassKind kind) {
  ElementMatrix me = ElementMatrix::Zero();
  const std::array<double, 3> rho{p.rho1, p.rho2, p.rho1};
  for (int f = 0; f < 3; ++f) {
    if (kind == MassKind::consistent) {
      me(2 * f, 2 * f) = me(2 * f + 1, 2 * f + 1) = rho[f] * h / 3.0;
      me(2 * f, 2 * f + 1) = me(2 * f + 1, 2 * f) = rho[f] * h / 6.0;
    } else {
      me(2 * f, 2 * f) = me(2 * f + 1, 2 * f + 1) = rho[f] * h / 2.0;
    }
  }
  return me;
}

SparseMat assemble_full(const Grid& grid, const ElementMatrix& ke) {
  const std::size_t n = grid.elements;
  Triplets trip;
  trip.reserve(36 * n);
  for (std::size_t e = 0; e < n; ++e) {
    std::array<Eigen::Index, 6> idx{};
    for (int f = 0; f < 3; ++f) {
      idx[2 * f] = full_index(f, e, n);
      idx[2 * f + 1] = full_index(f, e + 1, n);
    }
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        if (ke(i, j) != 0.0) trip.emplace_back(idx[i], idx[j], ke(i, j));
  }
  const auto size = static_cast<Eigen::Index>(3 * (n + 1));
  SparseMat full(size, size);
  full.setFromTriplets(trip.begin(), trip.end());
  return full;
}

// Splits an unreduced matrix into the free-free block and the 3 rows of the
// clamped node restricted to free columns.
std::pair<SparseMat, SparseMat> eliminate(const SparseMat& full, std::size_t elements) {
  const std::size_t n = elements;
  const auto reduced = static_cast<Eigen::Index>(3 * n);
  std::vector<Eigen::Index> map(full.rows(), -1);
  std::vector<int> end_row(full.rows(), -1);
  for (int f = 0; f < 3; ++f) {
    for (std::size_t j = 0; j < n; ++j) map[full_index(f, j, n)] = dof(static_cast<Field>(f), j, n);
    end_row[full_index(f, n, n)] = f;
  }
  Triplets free_trip;
  Triplets end_trip;
  for (int k = 0; k < full.outerSize(); ++k) {
    for (SparseMat::InnerIterator it(full, k); it; ++it) {
      const auto r = it.row();
      const auto c = it.col();
      if (map[c] < 0) continue;
      if (map[r] >= 0) {
        free_trip.emplace_back(map[r], map[c], it.value());
      } else {
        end_trip.emplace_back(end_row[r], map[c], it.value());
      }
    }
  }
  SparseMat free_block(reduced, reduced);
  free_block.setFromTriplets(free_trip.begin(), free_trip.end());
  SparseMat end_block(3, reduced);
  end_block.setFromTriplets(end_trip.begin(), end_trip.end());
  return {free_block, end_block};
}

SparseMat assemble_mass_full(const BresseParams& p, const Grid& grid, MassKind kind) {
  return assemble_full(grid, element_mass(p, grid.h(), kind));
}

SparseMat assemble_stiffness_full(const BresseParams& p, const Grid& grid) {
  return assemble_full(grid, element_stiffness(p, grid.h()));
}

}  // namespace

SparseMat assemble_mass(const BresseParams& p, const Grid& grid, MassKind kind) {
  return eliminate(assemble_mass_full(p, grid, kind), grid.elements).first;
}

SparseMat assemble_stiffness(const BresseParams& p, const Grid& grid) {
  return eliminate(assemble_stiffness_full(p, grid), grid.elements).first;
}

SparseMat assemble_damping(const BresseParams& p, const Grid& grid) {
  const std::size_t n = grid.elements;
  const auto size = static_cast<Eigen::Index>(3 * n);
  Triplets trip;
  const auto g = p.gains();
  for (int f = 0; f < 3; ++f) {
    if (g[f] != 0.0) trip.emplace_back(dof(static_cast<Field>(f), 0, n), dof(static_cast<Field>(f), 0, n), g[f]);
  }
  SparseMat d(size, size);
  d.setFromTriplets(trip.begin(), trip.end());
  return d;
}

FemSystem build_system(const BresseParams& p, std::size_t elements, MassKind kind) {
  p.validate();
  FemSystem sys;
  sys.params = p;
  sys.grid = build_grid(p.L, elements);
  sys.mass_kind = kind;
  auto [m, m_end] = eliminate(assemble_mass_full(p, sys.grid, kind), elements);
  auto [k, k_end] = eliminate(assemble_stiffness_full(p, sys.grid), elements);
  sys.M = std::move(m);
  sys.M_end = std::move(m_end);
  sys.K = std::move(k);
  sys.K_end = std::move(k_end);
  sys.D = assemble_damping(p, sys.grid);
  return sys;
}

double check_coercivity(const SparseMat& K) {
  const Eigen::MatrixXd dense(K);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("check_coercivity: eigensolver did not converge");
  return es.eigenvalues().minCoeff();
}

double coercivity_constant(const FemSystem& sys) {
  BresseParams unit = sys.params;
  unit.rho1 = unit.rho2 = 1.0;
  const Eigen::MatrixXd gram(assemble_mass(unit, sys.grid, MassKind::consistent));
  const Eigen::MatrixXd k(sys.K);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(k, gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("coercivity_constant: eigensolver did not converge");
  return es.eigenvalues().minCoeff();
}

namespace {

SparseMat block(const SparseMat& a, Field rows, Field cols, std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  return a.block(static_cast<Eigen::Index>(rows) * nn, static_cast<Eigen::Index>(cols) * nn, nn, nn);
}

}  // namespace

Pencil restrict_to_field(const FemSystem& sys, Field f) {
  const std::size_t n = sys.elements();
  for (Field other : {Field::phi, Field::psi, Field::w}) {
    if (other == f) continue;
    for (const SparseMat* a : {&sys.M, &sys.K, &sys.D}) {
      if (block(*a, f, other, n).norm() != 0.0) {
        throw std::invalid_argument("restrict_to_field: field is coupled to the others");
      }
    }
  }
  return Pencil{block(sys.M, f, f, n), block(sys.K, f, f, n), block(sys.D, f, f, n)};
}

Pencil full_pencil(const FemSystem& sys) { return Pencil{sys.M, sys.K, sys.D}; }

}  // namespace bresse
