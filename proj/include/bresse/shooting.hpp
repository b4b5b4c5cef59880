#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "bresse/model.hpp"

namespace bresse {

using cdouble = std::complex<double>;
using Matrix6c = Eigen::Matrix<cdouble, 6, 6>;

/// First-order matrix for X = (phi, psi, w, phi_x, psi_x, w_x) of the
/// eigenvalue problem with time factor e^{s t}:
///   phi_xx = ((s^2 rho1 + k0 ell^2)/kappa) phi - psi_x - ((kappa+k0) ell/kappa) w_x
///   psi_xx = ((s^2 rho2 + kappa)/b) psi + (kappa/b) phi_x + (kappa ell/b) w
///   w_xx   = ((s^2 rho1 + kappa ell^2)/k0) w + ((kappa+k0) ell/k0) phi_x + (kappa ell/k0) psi
Matrix6c ode_matrix(cdouble s, const BresseParams& p);

/// exp(x ode_matrix(s)); x defaults to L.
Matrix6c transfer_matrix(cdouble s, const BresseParams& p);
Matrix6c transfer_matrix(cdouble s, const BresseParams& p, double x);

/// 6 x 3 matrix whose columns are X(0) for (phi, psi, w)(0) = e_i under the
/// damped conditions at x = 0.
Eigen::Matrix<cdouble, 6, 3> boundary_basis(cdouble s, const BresseParams& p);

/// det of the (phi, psi, w)(L) block of transfer_matrix(s) * boundary_basis(s).
/// Its zeros are the eigenvalues of the continuous damped operator.
cdouble characteristic_function(cdouble s, const BresseParams& p);

struct SeedOutcome {
  cdouble seed;
  cdouble root;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;  // |F(root)|
};

struct ShootingResult {
  std::vector<cdouble> roots;  // converged, deduplicated within 1e-8 (1 + |z|)
  std::vector<SeedOutcome> seeds;
};

/// Muller iteration on characteristic_function from each seed; a seed that
/// fails to converge is reported in its outcome, not thrown.
ShootingResult find_eigen_shooting(const std::vector<cdouble>& seeds, const BresseParams& p,
                                   double tol = 1e-12);

}  // namespace bresse
