#include "bresse/multiplier.hpp"

#include <cmath>
#include <stdexcept>

namespace bresse {

MultiplierWeight affine_weight(const Grid& grid, double slope, double offset) {
  MultiplierWeight w{Eigen::VectorXd(grid.node_count()), Eigen::VectorXd(grid.node_count())};
  for (std::size_t j = 0; j < grid.node_count(); ++j) {
    w.q[static_cast<Eigen::Index>(j)] = slope * grid.node(j) + offset;
    w.dq[static_cast<Eigen::Index>(j)] = slope;
  }
  return w;
}

MultiplierWeight default_weight(const Grid& grid) { return affine_weight(grid, 1.0, -grid.length); }

namespace {

constexpr double kGaussLo = 0.5 - 0.5 / 1.7320508075688772;
constexpr double kGaussHi = 0.5 + 0.5 / 1.7320508075688772;

using Nodal = std::array<Eigen::VectorXcd, 3>;

// Values and slopes of the six fields plus the load at one quadrature point.
struct Point {
  double q, dq;
  std::array<cdouble, 3> u, ux, v, fu_x, fv;
};

double sq(cdouble z) { return std::norm(z); }

}  // namespace

std::array<IdentityResidual, 3> verify_multiplier_identities(double lambda, const ComplexState& F,
                                                             const Generator& gen,
                                                             const MultiplierWeight& w) {
  const FemSystem& sys = gen.system();
  const BresseParams& p = sys.params;
  const std::size_t n = sys.elements();
  const double h = sys.grid.h();
  const auto nodes = static_cast<Eigen::Index>(n + 1);
  if (w.q.size() != nodes || w.dq.size() != nodes) {
    throw std::invalid_argument("verify_multiplier_identities: weight must be sampled on all N+1 nodes");
  }

  const ComplexState U = solve_resolvent(lambda, F, gen);
  const Nodal u = to_nodal(U.u, n);
  const Nodal v = to_nodal(U.v, n);
  const Nodal fu = to_nodal(F.u, n);
  const Nodal fv = to_nodal(F.v, n);

  const double r1 = p.rho1, r2 = p.rho2, ka = p.kappa, k0 = p.k0, b = p.b, ell = p.ell;
  std::array<double, 3> lhs{}, integral{};

  for (std::size_t e = 0; e < n; ++e) {
    const auto a = static_cast<Eigen::Index>(e);
    for (double xi : {kGaussLo, kGaussHi}) {
      Point pt;
      pt.q = (1.0 - xi) * w.q[a] + xi * w.q[a + 1];
      pt.dq = (1.0 - xi) * w.dq[a] + xi * w.dq[a + 1];
      for (int f = 0; f < 3; ++f) {
        pt.u[f] = (1.0 - xi) * u[f][a] + xi * u[f][a + 1];
        pt.ux[f] = (u[f][a + 1] - u[f][a]) / h;
        pt.v[f] = (1.0 - xi) * v[f][a] + xi * v[f][a + 1];
        pt.fu_x[f] = (fu[f][a + 1] - fu[f][a]) / h;
        pt.fv[f] = (1.0 - xi) * fv[f][a] + xi * fv[f][a + 1];
      }
      const double wt = 0.5 * h;
      const double q = pt.q, dq = pt.dq;
      const auto re = [](cdouble z) { return z.real(); };
      const auto& [ph, ps, ww] = pt.u;
      const auto& [phx, psx, wx] = pt.ux;
      const auto& [Ph, Ps, W] = pt.v;

      lhs[0] += wt * dq * (r1 * sq(Ph) + ka * sq(phx));
      integral[0] += wt * (2.0 * ka * re(q * psx * std::conj(phx)) + k0 * ell * ell * dq * sq(ph) +
                           2.0 * (ka + k0) * ell * re(q * wx * std::conj(phx)) +
                           2.0 * r1 * re(Ph * q * std::conj(pt.fu_x[0])) +
                           2.0 * r1 * re(pt.fv[0] * q * std::conj(phx)));

      lhs[1] += wt * dq * (r2 * sq(Ps) + b * sq(psx));
      integral[1] += wt * (-2.0 * ka * re(q * phx * std::conj(psx)) + ka * dq * sq(ps) -
                           2.0 * ka * ell * re(q * ww * std::conj(psx)) +
                           2.0 * r2 * re(Ps * q * std::conj(pt.fu_x[1])) +
                           2.0 * r2 * re(pt.fv[1] * q * std::conj(psx)));

      lhs[2] += wt * dq * (r1 * sq(W) + k0 * sq(wx));
      integral[2] += wt * (-2.0 * ka * ell * re(q * ps * std::conj(wx)) -
                           2.0 * (ka + k0) * ell * re(q * phx * std::conj(wx)) +
                           ka * ell * ell * dq * sq(ww) +
                           2.0 * r1 * re(W * q * std::conj(pt.fu_x[2])) +
                           2.0 * r1 * re(pt.fv[2] * q * std::conj(wx)));
    }
  }

  const BoundaryTraces t = boundary_traces(lambda, U, F, gen);
  const double q0 = w.q[0], qL = w.q[nodes - 1];
  // At x = L all displacements and velocities vanish; only slopes survive.
  const std::array<double, 3> stiff{ka, b, k0};
  const std::array<double, 3> rho{r1, r2, r1};
  const std::array<double, 3> zero_order{k0 * ell * ell, ka, ka * ell * ell};
  std::array<IdentityResidual, 3> out;
  for (int f = 0; f < 3; ++f) {
    const double at_l = qL * stiff[f] * sq(t.slopeL[f]);
    const double at_0 = q0 * (rho[f] * sq(t.vel0[f]) + stiff[f] * sq(t.slope0[f]) -
                              zero_order[f] * sq(t.disp0[f]));
    out[f].lhs = lhs[f];
    out[f].rhs = at_l - at_0 + integral[f];
    out[f].residual = std::abs(out[f].lhs - out[f].rhs);
  }
  return out;
}

}  // namespace bresse
