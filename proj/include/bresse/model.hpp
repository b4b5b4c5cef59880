#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "bresse/grid.hpp"

namespace bresse {

/// Material constants of the circular arch and the three boundary gains.
///
/// rho1 = rho*A, rho2 = rho*I, kappa = k'GA, k0 = EA, b = EI, ell = 1/R.
/// ell = 0 is the Timoshenko limit; gains of zero give conservative runs.
struct BresseParams {
  double rho1 = 1.0;
  double rho2 = 1.0;
  double kappa = 1.0;
  double k0 = 1.0;
  double b = 1.0;
  double ell = 0.5;
  double L = 1.0;
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  double gamma3 = 1.0;

  /// Throws ConfigError naming the first offending field.
  void validate() const;
  std::array<double, 3> gains() const { return {gamma1, gamma2, gamma3}; }
};

BresseParams default_params();

struct WaveSpeeds {
  double c1;  // sqrt(kappa / rho1)
  double c2;  // sqrt(b / rho2)
  double c3;  // sqrt(k0 / rho1)

  double max() const;
  double min() const;
};

WaveSpeeds wave_speeds(const BresseParams& p);

/// Characteristic impedances sqrt(kappa*rho1), sqrt(b*rho2), sqrt(k0*rho1).
std::array<double, 3> impedances(const BresseParams& p);

/// Nodal samples of (phi, psi, w) or (Phi, Psi, W) on all N+1 grid nodes.
using NodalFields = std::array<Eigen::VectorXd, 3>;

enum class Quadrature {
  gauss2,     // two-point Gauss per element, exact for piecewise-linear data
  trapezoid,  // element end-point rule using element-wise slopes
};

/// Physical energy 1/2 * int(rho1|Phi|^2 + rho2|Psi|^2 + rho1|W|^2
///   + kappa|phi_x+psi+ell w|^2 + b|psi_x|^2 + k0|w_x - ell phi|^2) of the
/// piecewise-linear interpolant of the given nodal fields.
double continuous_energy(const NodalFields& u, const NodalFields& v, const BresseParams& p,
                         const Grid& grid, Quadrature rule = Quadrature::gauss2);

/// dE/dt = -(g1|v1|^2 + g2|v2|^2 + g3|v3|^2) for boundary velocities at x = 0.
double dissipation_rate(const std::array<double, 3>& boundary_velocity, const BresseParams& p);
double dissipation_rate(const std::array<std::complex<double>, 3>& boundary_velocity,
                        const BresseParams& p);

/// Closed-form point spectrum of the decoupled w-equation (ell = 0):
///   rho1 w_tt = k0 w_xx,  w(L) = 0,  k0 w_x(0) = gamma3 w_t(0).
/// Roots of exp(-2 lambda L / c3) (gamma3 - Z3) = Z3 + gamma3 with Z3 = sqrt(k0 rho1),
/// returned for k = 0..k_max-1 in the closed upper half-plane, sorted by Im.
/// Empty when gamma3 == Z3 (no reflection, hence no eigenvalues).
/// Throws std::invalid_argument when ell != 0.
std::vector<std::complex<double>> analytic_wave_spectrum(const BresseParams& p, std::size_t k_max);

/// Residual |exp(-2 lambda L/c3)(gamma3 - Z3) - (Z3 + gamma3)| of the w-branch relation.
double wave_characteristic_residual(const BresseParams& p, std::complex<double> lambda);

}  // namespace bresse
