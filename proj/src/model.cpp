#include "bresse/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bresse/errors.hpp"

namespace bresse {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError(name, std::string(name) + " must be strictly positive (got " +
                                std::to_string(value) + ")");
  }
}

void require_nonnegative(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ConfigError(name, std::string(name) + " must be nonnegative (got " +
                                std::to_string(value) + ")");
  }
}

}  // namespace

void BresseParams::validate() const {
  require_positive(rho1, "rho1");
  require_positive(rho2, "rho2");
  require_positive(kappa, "kappa");
  require_positive(k0, "k0");
  require_positive(b, "b");
  require_positive(L, "L");
  require_nonnegative(ell, "ell");
  require_nonnegative(gamma1, "gamma1");
  require_nonnegative(gamma2, "gamma2");
  require_nonnegative(gamma3, "gamma3");
}

BresseParams default_params() { return BresseParams{}; }

double WaveSpeeds::max() const { return std::max({c1, c2, c3}); }
double WaveSpeeds::min() const { return std::min({c1, c2, c3}); }

WaveSpeeds wave_speeds(const BresseParams& p) {
  return {std::sqrt(p.kappa / p.rho1), std::sqrt(p.b / p.rho2), std::sqrt(p.k0 / p.rho1)};
}

std::array<double, 3> impedances(const BresseParams& p) {
  return {std::sqrt(p.kappa * p.rho1), std::sqrt(p.b * p.rho2), std::sqrt(p.k0 * p.rho1)};
}

double continuous_energy(const NodalFields& u, const NodalFields& v, const BresseParams& p,
                         const Grid& grid, Quadrature rule) {
  const std::size_t n = grid.node_count();
  for (int f = 0; f < 3; ++f) {
    if (static_cast<std::size_t>(u[f].size()) != n || static_cast<std::size_t>(v[f].size()) != n) {
      throw std::invalid_argument("continuous_energy: field length does not match grid nodes");
    }
  }
  const double h = grid.h();

  // Reference points on [0, 1] and weights summing to one.
  std::array<double, 2> xi{};
  std::array<double, 2> wt{0.5, 0.5};
  if (rule == Quadrature::gauss2) {
    xi = {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)};
  } else {
    xi = {0.0, 1.0};
  }

  double total = 0.0;
  for (std::size_t e = 0; e < grid.elements; ++e) {
    const double dphi = (u[0][e + 1] - u[0][e]) / h;
    const double dpsi = (u[1][e + 1] - u[1][e]) / h;
    const double dw = (u[2][e + 1] - u[2][e]) / h;
    for (int q = 0; q < 2; ++q) {
      const auto at = [&](const Eigen::VectorXd& f) {
        return (1.0 - xi[q]) * f[e] + xi[q] * f[e + 1];
      };
      const double phi = at(u[0]);
      const double psi = at(u[1]);
      const double w = at(u[2]);
      const double shear = dphi + psi + p.ell * w;
      const double axial = dw - p.ell * phi;
      const double density = p.rho1 * std::pow(at(v[0]), 2) + p.rho2 * std::pow(at(v[1]), 2) +
                             p.rho1 * std::pow(at(v[2]), 2) + p.kappa * shear * shear +
                             p.b * dpsi * dpsi + p.k0 * axial * axial;
      total += wt[q] * h * density;
    }
  }
  return 0.5 * total;
}

double dissipation_rate(const std::array<double, 3>& boundary_velocity, const BresseParams& p) {
  const auto g = p.gains();
  double rate = 0.0;
  for (int j = 0; j < 3; ++j) rate += g[j] * boundary_velocity[j] * boundary_velocity[j];
  return -rate;
}

double dissipation_rate(const std::array<std::complex<double>, 3>& boundary_velocity,
                        const BresseParams& p) {
  const auto g = p.gains();
  double rate = 0.0;
  for (int j = 0; j < 3; ++j) rate += g[j] * std::norm(boundary_velocity[j]);
  return -rate;
}

std::vector<std::complex<double>> analytic_wave_spectrum(const BresseParams& p,
                                                         std::size_t k_max) {
  if (p.ell != 0.0) {
    throw std::invalid_argument("analytic_wave_spectrum requires ell = 0 (decoupled w-equation)");
  }
  const double c3 = wave_speeds(p).c3;
  const double z3 = impedances(p)[2];
  const double g3 = p.gamma3;
  std::vector<std::complex<double>> out;
  if (std::abs(g3 - z3) <= 1e-14 * z3) return out;

  // exp(2 lambda L / c3) = (g3 - Z3) / (g3 + Z3)
  const double ratio = (g3 - z3) / (g3 + z3);
  const double scale = c3 / (2.0 * p.L);
  const double re = scale * std::log(std::abs(ratio));
  const double offset = ratio < 0.0 ? 0.5 : 0.0;
  out.reserve(k_max);
  for (std::size_t k = 0; k < k_max; ++k) {
    const double im = std::numbers::pi * c3 / p.L * (static_cast<double>(k) + offset);
    out.emplace_back(re, im);
  }
  return out;
}

double wave_characteristic_residual(const BresseParams& p, std::complex<double> lambda) {
  const double c3 = wave_speeds(p).c3;
  const double z3 = impedances(p)[2];
  return std::abs(std::exp(-2.0 * lambda * p.L / c3) * (p.gamma3 - z3) - (z3 + p.gamma3));
}

}  // namespace bresse
