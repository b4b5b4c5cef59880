#include <doctest.h>

#include <cmath>

#include "bresse/sampling.hpp"
#include "bresse/spectral.hpp"
#include "bresse/timeint.hpp"

using namespace bresse;

namespace {

BresseParams conservative() {
  BresseParams p = default_params();
  p.gamma1 = p.gamma2 = p.gamma3 = 0.0;
  return p;
}

double bump(double x, double a, double b) {
  if (x <= a || x >= b) return 0.0;
  const double t = (x - a) / (b - a);
  return std::exp(4.0 - 1.0 / (t * (1.0 - t)));
}

}  // namespace

TEST_CASE("single midpoint step") {
  const FemSystem sys = build_system(default_params(), 32);
  const RealState z = RealState::zero(96);
  const RealState z1 = step_midpoint(z, 0.01, sys);
  CHECK(z1.u.norm() == 0.0);
  CHECK(z1.v.norm() == 0.0);

  const FemSystem cons = build_system(conservative(), 32);
  const RealState s = random_state(96, 1);
  const double e0 = discrete_energy(s, cons);
  CHECK(std::abs(discrete_energy(step_midpoint(s, 0.01, cons), cons) - e0) <= 1e-12 * e0);

  const MidpointStepper st(sys, 0.01);
  const RealState s1 = st.step(s);
  const double d0 = discrete_energy(s, sys), d1 = discrete_energy(s1, sys);
  const Eigen::VectorXd mid = 0.5 * (s.v + s1.v);
  CHECK(std::abs(d1 - d0 + 0.01 * mid.dot(sys.D * mid)) <= 1e-12 * d0);
  CHECK(st.loss(s, s1) == doctest::Approx(0.01 * mid.dot(sys.D * mid)));
}

TEST_CASE("stepping is unconditionally stable (property)") {
  const FemSystem sys = build_system(default_params(), 24);
  for (double dt : {1e-4, 1e-2, 0.3, 5.0, 100.0}) {
    const MidpointStepper st(sys, dt);
    RealState s = random_state(72, 5);
    const double e0 = discrete_energy(s, sys);
    for (int k = 0; k < 50; ++k) {
      s = st.step(s);
      CHECK(discrete_energy(s, sys) <= e0 * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("time reversibility without damping") {
  const FemSystem sys = build_system(conservative(), 32);
  const RealState s = random_state(96, 12);
  const RealState back = MidpointStepper(sys, -0.02).step(MidpointStepper(sys, 0.02).step(s));
  CHECK((back.u - s.u).norm() <= 1e-10 * s.u.norm());
  CHECK((back.v - s.v).norm() <= 1e-10 * s.v.norm());
}

TEST_CASE("conservative simulation keeps its energy") {
  const FemSystem sys = build_system(conservative(), 32);
  const EnergyTrace tr = simulate(smooth_initial_state(sys.grid, 3), 10.0, 0.01, sys);
  CHECK(tr.times.size() == 1001);
  double dev = 0.0;
  for (double e : tr.energies) dev = std::max(dev, std::abs(e - tr.energies[0]) / tr.energies[0]);
  CHECK(dev <= 1e-10);
  CHECK(std::abs(fit_decay_rate(tr, 1.0, 10.0).mu) <= 1e-8);
}

TEST_CASE("damped energy decreases") {
  const FemSystem sys = build_system(default_params(), 32);
  const EnergyTrace tr = simulate(smooth_initial_state(sys.grid, 4), 25.0, default_time_step(sys), sys);
  const double e0 = tr.energies[0];
  std::size_t checked = 0;
  for (std::size_t i = 1; i < tr.energies.size() && tr.energies[i - 1] > 1e-14 * e0; ++i) {
    CHECK(tr.energies[i] < tr.energies[i - 1]);
    CHECK(std::abs(tr.energies[i] - tr.energies[i - 1] + tr.boundary_losses[i]) <= 1e-11 * e0);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("matched impedance absorbs the wave") {
  BresseParams p = default_params();
  p.ell = 0.0;
  p.gamma3 = std::sqrt(p.k0 * p.rho1);
  REQUIRE(analytic_wave_spectrum(p, 5).empty());
  const FemSystem sys = build_system(p, 800);
  RealState s = RealState::zero(2400);
  for (std::size_t j = 0; j < 800; ++j) s.u[dof(Field::w, j, 800)] = bump(sys.grid.node(j), 0.1, 0.9);
  const double transit = 2.0 * p.L / wave_speeds(p).c3;
  const EnergyTrace tr = simulate(s, transit + 0.2, sys.grid.h() / 2.0, sys);
  CHECK(tr.energies.back() <= 1e-10 * tr.energies.front());
}

TEST_CASE("simulate argument checks") {
  const FemSystem sys = build_system(default_params(), 8);
  const RealState s = random_state(24, 1);
  CHECK_THROWS_AS(simulate(s, 0.0, 0.1, sys), std::invalid_argument);
  CHECK_THROWS_AS(simulate(s, 1.0, -0.1, sys), std::invalid_argument);
  CHECK(simulate(s, 1.0, 0.3, sys).times.size() == 5);  // ceil(1 / 0.3) steps
  CHECK(default_time_step(sys) == doctest::Approx(1.0 / 16.0));
}

TEST_CASE("decay fit") {
  EnergyTrace tr;
  for (int i = 0; i <= 100; ++i) {
    const double t = 0.1 * i;
    tr.times.push_back(t);
    tr.energies.push_back(std::exp(-2.0 * 0.3 * t));
    tr.boundary_losses.push_back(0.0);
  }
  const DecayFit f = fit_decay_rate(tr, 0.0, 10.0);
  CHECK(f.mu == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(f.residual <= 1e-10);

  EnergyTrace flat = tr;
  for (double& e : flat.energies) e = 2.5;
  CHECK(std::abs(fit_decay_rate(flat, 0.0, 10.0).mu) <= 1e-14);

  EnergyTrace scaled = tr;
  for (double& e : scaled.energies) e *= 1e6;
  CHECK(fit_decay_rate(scaled, 2.0, 8.0).mu == doctest::Approx(f.mu).epsilon(1e-10));

  EnergyTrace dead = tr;
  dead.energies[50] = 0.0;
  CHECK_THROWS_AS(fit_decay_rate(dead, 0.0, 10.0), std::domain_error);
  CHECK_THROWS_AS(fit_decay_rate(tr, 20.0, 30.0), std::invalid_argument);
}

TEST_CASE("fitted rate is invariant under scaling the data") {
  const FemSystem sys = build_system(default_params(), 32);
  RealState s = smooth_initial_state(sys.grid, 9);
  const double dt = default_time_step(sys);
  const double mu1 = fit_decay_rate(simulate(s, 8.0, dt, sys), 3.0, 8.0).mu;
  s.u *= 1e-3;
  s.v *= 1e-3;
  const double mu2 = fit_decay_rate(simulate(s, 8.0, dt, sys), 3.0, 8.0).mu;
  CHECK(mu2 == doctest::Approx(mu1).epsilon(1e-9));
}

TEST_CASE("decay rate matches the spectral abscissa") {
  const FemSystem sys = build_system(default_params(), 64);
  const EnergyTrace tr = simulate(smooth_initial_state(sys.grid, 1), 15.0, 1e-3, sys);
  const double mu = fit_decay_rate(tr, 5.0, 15.0).mu;
  const double target = -compute_spectrum(sys).resolved_abscissa;
  CHECK(std::abs(mu - target) <= 0.1 * target);
}
