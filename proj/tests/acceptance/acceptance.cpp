#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "bresse/certify.hpp"
#include "bresse/errors.hpp"
#include "bresse/generator.hpp"
#include "bresse/multiplier.hpp"
#include "bresse/sampling.hpp"
#include "bresse/shooting.hpp"
#include "bresse/spectral.hpp"
#include "bresse/timeint.hpp"

using namespace bresse;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, bool ok, double seconds, double budget, const std::string& detail) {
  const bool in_time = seconds < budget;
  const bool pass = ok && in_time;
  if (!pass) ++failures;
  std::printf("criterion %d: %s  %s  [%.1f s, budget %.0f s%s]\n", id, pass ? "PASS" : "FAIL", detail.c_str(),
              seconds, budget, in_time ? "" : ", over budget");
  std::fflush(stdout);
}

void info(const std::string& line) {
  std::printf("  info: %s\n", line.c_str());
  std::fflush(stdout);
}

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

BresseParams conservative() {
  BresseParams p = default_params();
  p.gamma1 = p.gamma2 = p.gamma3 = 0.0;
  return p;
}

cdouble nearest(const std::vector<cdouble>& ev, cdouble z) {
  return *std::min_element(ev.begin(), ev.end(),
                           [&](cdouble a, cdouble b) { return std::abs(a - z) < std::abs(b - z); });
}

void dissipativity() {
  const auto t0 = Clock::now();
  const Generator gen(build_system(default_params(), 64));
  const DissipativityReport r = check_dissipativity(gen, 1000, 20261014);
  report(1, r.max_relative_residual <= 1e-11, since(t0), 5,
         fmt("max |Re<AU,U> + sum gamma|v(0)|^2| / ||U||^2 = %.3e over 1000 states, N=64", r.max_relative_residual));
}

void energy_balance() {
  const auto t0 = Clock::now();
  const FemSystem sys = build_system(default_params(), 64);
  const double dt = default_time_step(sys);
  const EnergyTrace tr = simulate(smooth_initial_state(sys.grid, 11), 1e4 * dt, dt, sys);
  const double e0 = tr.energies.front();
  double balance = 0.0;
  for (std::size_t n = 1; n < tr.energies.size(); ++n)
    balance = std::max(balance, std::abs(tr.energies[n] - tr.energies[n - 1] + tr.boundary_losses[n]));

  const FemSystem cons = build_system(conservative(), 64);
  const EnergyTrace tc = simulate(smooth_initial_state(cons.grid, 11), 1e4 * dt, dt, cons);
  double drift = 0.0;
  for (double e : tc.energies) drift = std::max(drift, std::abs(e - tc.energies.front()) / tc.energies.front());

  const std::size_t steps = tr.energies.size() - 1;
  report(2, steps >= 10000 && balance <= 1e-11 * e0 && drift <= 1e-10, since(t0), 30,
         std::to_string(steps) + " steps: " +
             fmt("max step balance / E0 = %.3e; ", balance / e0) + fmt("gamma=0 drift = %.3e", drift));
}

void wave_oracle() {
  const auto t0 = Clock::now();
  BresseParams p = default_params();
  p.ell = 0.0;
  p.gamma1 = p.gamma2 = 0.0;
  p.gamma3 = 0.5;
  const FemSystem sys = build_system(p, 800);
  const SpectrumReport r = compute_spectrum(restrict_to_field(sys, Field::w), sys);
  const auto exact = analytic_wave_spectrum(p, 5);
  double disc = 0.0;
  std::vector<cdouble> seeds;
  for (cdouble z : exact) {
    const cdouble d = nearest(r.eigenvalues, z);
    seeds.push_back(d);
    disc = std::max(disc, std::abs(d - z) / std::abs(z));
  }
  const ShootingResult shot = find_eigen_shooting(seeds, p);
  double sh = 0.0;
  bool converged = shot.seeds.size() == exact.size();
  for (std::size_t k = 0; k < shot.seeds.size(); ++k) {
    converged = converged && shot.seeds[k].converged;
    sh = std::max(sh, std::abs(shot.seeds[k].root - exact[k]) / std::abs(exact[k]));
  }
  report(3, exact.size() == 5 && disc <= 1e-3 && converged && sh <= 1e-8, since(t0), 60,
         fmt("w-block N=800 (gamma3=0.5): max rel err %.3e; ", disc) + fmt("shooting max rel err %.3e", sh));
}

double resolved_64 = 0.0;

void certificate() {
  const auto t0 = Clock::now();
  const BresseParams p = default_params();
  std::vector<StabilityCertificate> certs;
  for (std::size_t n : {32, 64, 128}) {
    certs.push_back(certify_stability(p, n, 200.0));
    const StabilityCertificate& c = certs.back();
    info("N=" + std::to_string(n) + fmt(": resolved abscissa %.6f", c.resolved_abscissa) +
         fmt(" (|Im| <= %.1f)", c.resolved_cutoff) + fmt(", raw abscissa %.6f", c.spectral_abscissa) +
         fmt(", clearance %.4f", c.imag_axis_clearance) + fmt(", sup ||R|| %.5f", c.resolvent_sup) +
         fmt(" at %.3f", c.resolvent_argmax));
  }
  bool ok = true;
  for (const auto& c : certs)
    ok = ok && c.resolved_abscissa < 0.0 && c.imag_axis_clearance > 0.0 && std::isfinite(c.resolvent_sup);
  const double a64 = certs[1].resolved_abscissa, a128 = certs[2].resolved_abscissa;
  const double abs_var = std::abs(a64 - a128) / std::abs(a128);
  const double s64 = certs[1].resolvent_sup, s128 = certs[2].resolvent_sup;
  const double sup_var = std::abs(s64 - s128) / s128;
  ok = ok && abs_var < 0.05 && sup_var <= 0.20;
  resolved_64 = a64;
  info(fmt("raw abscissa N=64 vs 128 varies by %.1f%% (spurious O(h^2) high-frequency modes)",
           100.0 * std::abs(certs[1].spectral_abscissa - certs[2].spectral_abscissa) /
               std::abs(certs[2].spectral_abscissa)));
  report(4, ok, since(t0), 300,
         fmt("abscissa < 0 on all meshes, N=64/128 variation %.4f%%; ", 100 * abs_var) +
             fmt("clearance > 0; sup finite, variation %.2f%%", 100 * sup_var));
}

void decay_rate() {
  const auto t0 = Clock::now();
  const BresseParams p = default_params();
  const FemSystem sys = build_system(p, 64);
  const double transit = p.L / wave_speeds(p).min();
  const double T = 15.0;
  const EnergyTrace tr = simulate(smooth_initial_state(sys.grid, 5), T, 1e-3, sys);
  const DecayFit fit = fit_decay_rate(tr, transit, T);
  const double target = resolved_64 != 0.0 ? -resolved_64 : -compute_spectrum(sys).resolved_abscissa;
  const double rel = std::abs(fit.mu - target) / target;
  report(5, rel <= 0.10, since(t0), 60,
         fmt("fitted mu %.5f", fit.mu) + fmt(" on [%.1f, 15]", transit) + fmt(" vs -abscissa %.5f", target) +
             fmt(", rel diff %.2f%%", 100 * rel));
}

void multipliers() {
  const auto t0 = Clock::now();
  std::vector<std::array<IdentityResidual, 3>> res;
  for (std::size_t n : {32, 64, 128}) {
    const Generator gen(build_system(default_params(), n));
    const Grid& g = gen.system().grid;
    res.push_back(verify_multiplier_identities(5.0, to_complex(smooth_load(g, 9)), gen, default_weight(g)));
  }
  double worst = INFINITY;
  for (int k = 0; k < 3; ++k)
    for (int s = 0; s < 2; ++s) worst = std::min(worst, res[s][k].residual / res[s + 1][k].residual);
  for (int k = 0; k < 3; ++k)
    info("identity " + std::to_string(k + 1) + fmt(": residuals %.3e", res[0][k].residual) +
         fmt(", %.3e", res[1][k].residual) + fmt(", %.3e", res[2][k].residual));
  report(6, worst >= 1.8, since(t0), 60, fmt("smallest residual reduction per doubling %.3f", worst));
}

void boundary_estimates() {
  const auto t0 = Clock::now();
  const Generator gen(build_system(default_params(), 64));
  const ComplexState F = to_complex(smooth_load(gen.system().grid, 9));
  std::array<double, 3> lo{}, hi{};
  for (int l = 1; l <= 100; ++l) {
    const BoundaryEstimateRatios r = verify_boundary_estimates(l, F, gen);
    auto& m = l <= 50 ? lo : hi;
    m[0] = std::max(m[0], r.r0);
    m[1] = std::max(m[1], r.r1);
    m[2] = std::max(m[2], r.r2);
  }
  bool ok = true;
  std::string detail;
  for (int k = 0; k < 3; ++k) {
    ok = ok && hi[k] <= 2.0 * lo[k];
    detail += "r" + std::to_string(k) + fmt(" upper/lower %.3f", hi[k] / lo[k]) + (k < 2 ? "; " : "");
  }
  report(7, ok, since(t0), 120, detail);
}

void negative_control() {
  const auto t0 = Clock::now();
  const BresseParams p = conservative();
  const StabilityCertificate c = certify_stability(p, 32, 200.0);
  const FemSystem sys = build_system(p, 32);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(sys.K), Eigen::MatrixXd(sys.M));
  const double omega = std::sqrt(es.eigenvalues()[0]);
  bool raised = false;
  try {
    resolvent_norm(omega, sys);
  } catch (const NearSingularError&) {
    raised = true;
  }
  report(8, !c.pass && c.imag_axis_clearance <= 1e-9 && raised, since(t0), 60,
         std::string("certificate ") + (c.pass ? "passes" : "fails") + fmt(", clearance %.3e", c.imag_axis_clearance) +
             fmt("; resolvent_norm at omega=%.6f ", omega) + (raised ? "raises NearSingular" : "does not raise"));
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  dissipativity();
  energy_balance();
  wave_oracle();
  certificate();
  decay_rate();
  multipliers();
  boundary_estimates();
  negative_control();
  std::printf("%s: %d of 8 criteria failed [%.1f s total]\n", failures ? "FAIL" : "PASS", failures, since(t0));
  return failures ? 1 : 0;
}
