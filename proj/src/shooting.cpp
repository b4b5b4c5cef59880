#include "bresse/shooting.hpp"

#include <cmath>

#include "bresse/linalg.hpp"

namespace bresse {

Matrix6c ode_matrix(cdouble s, const BresseParams& p) {
  const double ka = p.kappa, k0 = p.k0, b = p.b, ell = p.ell;
  const cdouble s2 = s * s;
  Matrix6c a = Matrix6c::Zero();
  a(0, 3) = a(1, 4) = a(2, 5) = 1.0;

  a(3, 0) = (s2 * p.rho1 + k0 * ell * ell) / ka;
  a(3, 4) = -1.0;
  a(3, 5) = -(ka + k0) * ell / ka;

  a(4, 1) = (s2 * p.rho2 + ka) / b;
  a(4, 3) = ka / b;
  a(4, 2) = ka * ell / b;

  a(5, 2) = (s2 * p.rho1 + ka * ell * ell) / k0;
  a(5, 3) = (ka + k0) * ell / k0;
  a(5, 1) = ka * ell / k0;
  return a;
}

Matrix6c transfer_matrix(cdouble s, const BresseParams& p) { return transfer_matrix(s, p, p.L); }

Matrix6c transfer_matrix(cdouble s, const BresseParams& p, double x) {
  return expm(Eigen::MatrixXcd(x * ode_matrix(s, p)));
}

Eigen::Matrix<cdouble, 6, 3> boundary_basis(cdouble s, const BresseParams& p) {
  Eigen::Matrix<cdouble, 6, 3> x0 = Eigen::Matrix<cdouble, 6, 3>::Zero();
  for (int i = 0; i < 3; ++i) {
    const cdouble ph = i == 0 ? 1.0 : 0.0, ps = i == 1 ? 1.0 : 0.0, w = i == 2 ? 1.0 : 0.0;
    x0(0, i) = ph;
    x0(1, i) = ps;
    x0(2, i) = w;
    x0(3, i) = p.gamma1 * s * ph / p.kappa - ps - p.ell * w;
    x0(4, i) = p.gamma2 * s * ps / p.b;
    x0(5, i) = p.gamma3 * s * w / p.k0 + p.ell * ph;
  }
  return x0;
}

cdouble characteristic_function(cdouble s, const BresseParams& p) {
  const Eigen::Matrix<cdouble, 6, 3> xl = transfer_matrix(s, p) * boundary_basis(s, p);
  const Eigen::Matrix<cdouble, 3, 3> top = xl.topRows(3);
  return top.determinant();
}

ShootingResult find_eigen_shooting(const std::vector<cdouble>& seeds, const BresseParams& p, double tol) {
  ShootingResult out;
  const auto f = [&](cdouble s) { return characteristic_function(s, p); };
  for (cdouble seed : seeds) {
    const RootResult r = muller(f, seed, 1e-4 * (1.0 + std::abs(seed)), tol);
    SeedOutcome o{seed, r.root, r.iterations, r.converged, std::abs(r.value)};
    out.seeds.push_back(o);
    if (!o.converged) continue;
    bool dup = false;
    for (cdouble z : out.roots) dup = dup || std::abs(z - r.root) <= 1e-8 * (1.0 + std::abs(z));
    if (!dup) out.roots.push_back(r.root);
  }
  return out;
}

}  // namespace bresse
