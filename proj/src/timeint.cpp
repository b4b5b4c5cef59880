#include "bresse/timeint.hpp"

#include <cmath>
#include <stdexcept>

#include "bresse/errors.hpp"

namespace bresse {

MidpointStepper::MidpointStepper(const FemSystem& sys, double dt) : K_(sys.K), D_(sys.D), dt_(dt) {
  if (!std::isfinite(dt) || dt == 0.0) throw std::invalid_argument("MidpointStepper: dt must be finite and nonzero");
  const SparseMat lhs = sys.M + (0.5 * dt) * sys.D + (0.25 * dt * dt) * sys.K;
  auto ldlt = std::make_shared<Eigen::SimplicialLDLT<SparseMat>>(lhs);
  if (ldlt->info() != Eigen::Success) throw Error("MidpointStepper: step matrix factorization failed");
  lhs_ = std::move(ldlt);
  rhs_v_ = sys.M - (0.25 * dt * dt) * sys.K - (0.5 * dt) * sys.D;
}

RealState MidpointStepper::step(const RealState& s) const {
  s.check(K_.rows());
  RealState next;
  next.v = lhs_->solve(Eigen::VectorXd(rhs_v_ * s.v - dt_ * (K_ * s.u)));
  next.u = s.u + (0.5 * dt_) * (s.v + next.v);
  return next;
}

double MidpointStepper::loss(const RealState& s0, const RealState& s1) const {
  const Eigen::VectorXd mid = 0.5 * (s0.v + s1.v);
  return dt_ * mid.dot(D_ * mid);
}

double discrete_energy(const RealState& s, const FemSystem& sys) {
  s.check(sys.size());
  return 0.5 * (s.u.dot(sys.K * s.u) + s.v.dot(sys.M * s.v));
}

RealState step_midpoint(const RealState& s, double dt, const FemSystem& sys) {
  return MidpointStepper(sys, dt).step(s);
}

double default_time_step(const FemSystem& sys) {
  return sys.grid.h() / (2.0 * wave_speeds(sys.params).max());
}

EnergyTrace simulate(const RealState& initial, double T, double dt, const FemSystem& sys) {
  if (!(T > 0.0)) throw std::invalid_argument("simulate: horizon T must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("simulate: dt must be positive");
  initial.check(sys.size());
  const auto steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-12));
  const MidpointStepper stepper(sys, dt);

  EnergyTrace trace;
  trace.params = sys.params;
  trace.times.reserve(steps + 1);
  trace.energies.reserve(steps + 1);
  trace.boundary_losses.reserve(steps + 1);
  trace.times.push_back(0.0);
  trace.energies.push_back(discrete_energy(initial, sys));
  trace.boundary_losses.push_back(0.0);

  RealState s = initial;
  for (std::size_t k = 1; k <= steps; ++k) {
    RealState next = stepper.step(s);
    trace.times.push_back(static_cast<double>(k) * dt);
    trace.energies.push_back(discrete_energy(next, sys));
    trace.boundary_losses.push_back(stepper.loss(s, next));
    s = std::move(next);
  }
  return trace;
}

DecayFit fit_decay_rate(const EnergyTrace& trace, double t_a, double t_b) {
  if (trace.times.size() != trace.energies.size()) {
    throw std::invalid_argument("fit_decay_rate: times and energies differ in length");
  }
  std::vector<double> ts, ys;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const double t = trace.times[i];
    if (t < t_a || t > t_b) continue;
    const double e = trace.energies[i];
    if (!(e > 0.0)) {
      throw std::domain_error("fit_decay_rate: nonpositive energy at t = " + std::to_string(t) +
                              "; the trace decayed to round-off, shrink the window");
    }
    ts.push_back(t);
    ys.push_back(std::log(e));
  }
  if (ts.size() < 2) throw std::invalid_argument("fit_decay_rate: window holds fewer than two samples");

  const auto m = static_cast<double>(ts.size());
  double tm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    tm += ts[i];
    ym += ys[i];
  }
  tm /= m;
  ym /= m;
  double stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    stt += (ts[i] - tm) * (ts[i] - tm);
    sty += (ts[i] - tm) * (ys[i] - ym);
  }
  const double slope = sty / stt;
  double res = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double r = ys[i] - (ym + slope * (ts[i] - tm));
    res += r * r;
  }
  return {-0.5 * slope + 0.0, std::sqrt(res), ts.size()};
}

}  // namespace bresse
