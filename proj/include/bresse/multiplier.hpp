#pragma once

#include <array>
#include <functional>

#include <Eigen/Dense>

#include "bresse/generator.hpp"

namespace bresse {

/// Multiplier q sampled on all N+1 nodes together with its derivative.
struct MultiplierWeight {
  Eigen::VectorXd q;
  Eigen::VectorXd dq;
};

/// q(x) = slope * x + offset, exact derivative samples.
MultiplierWeight affine_weight(const Grid& grid, double slope, double offset);

/// q(x) = x - L.
MultiplierWeight default_weight(const Grid& grid);

struct IdentityResidual {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // |lhs - rhs|
};

/// The three multiplier identities for the phi, psi and w energies of a
/// resolvent solution U = (i lambda - A_h)^{-1} F, e.g. for phi
///
///   int q' (rho1|Phi|^2 + kappa|phi_x|^2)
///     = [q (rho1|Phi|^2 + kappa|phi_x|^2 - k0 ell^2 |phi|^2)]_0^L
///       + 2 kappa Re int q psi_x conj(phi_x) + k0 ell^2 int q'|phi|^2
///       + 2 (kappa+k0) ell Re int q w_x conj(phi_x) + R1.
///
/// Integrals use two-point Gauss; boundary slopes come from boundary_traces.
std::array<IdentityResidual, 3> verify_multiplier_identities(double lambda, const ComplexState& F,
                                                             const Generator& gen,
                                                             const MultiplierWeight& q);

}  // namespace bresse
