#pragma once

#include <memory>
#include <vector>

#include <Eigen/SparseCholesky>

#include "bresse/fem.hpp"
#include "bresse/state.hpp"

namespace bresse {

struct EnergyTrace {
  std::vector<double> times;
  std::vector<double> energies;         // 1/2 (u^T K u + v^T M v)
  std::vector<double> boundary_losses;  // dt v_mid^T D v_mid for the step ending at times[n]; 0 at n = 0
  BresseParams params;
};

/// Implicit midpoint rule for M u'' + D u' + K u = 0. The step matrix
/// M + dt/2 D + dt^2/4 K is factored once; dt may be negative (backward steps).
class MidpointStepper {
 public:
  MidpointStepper(const FemSystem& sys, double dt);

  RealState step(const RealState& s) const;
  /// dt * v_mid^T D v_mid for the step s0 -> s1.
  double loss(const RealState& s0, const RealState& s1) const;
  double dt() const { return dt_; }

 private:
  SparseMat K_;
  SparseMat D_;
  double dt_;
  std::shared_ptr<const Eigen::SimplicialLDLT<SparseMat>> lhs_;
  SparseMat rhs_v_;  // M - dt^2/4 K - dt/2 D
};

/// Physical energy 1/2 (u^T K u + v^T M v).
double discrete_energy(const RealState& s, const FemSystem& sys);

/// One step from scratch; prefer MidpointStepper for repeated steps.
RealState step_midpoint(const RealState& s, double dt, const FemSystem& sys);

/// h / (2 max wave speed).
double default_time_step(const FemSystem& sys);

/// ceil(T/dt) steps. Throws std::invalid_argument unless T > 0 and dt > 0.
EnergyTrace simulate(const RealState& initial, double T, double dt, const FemSystem& sys);

struct DecayFit {
  double mu = 0.0;        // -slope / 2 of ln E
  double residual = 0.0;  // 2-norm of the least-squares residual of ln E
  std::size_t samples = 0;
};

/// Least-squares fit of ln E over samples with t_a <= t <= t_b. Throws
/// std::invalid_argument for an empty window and std::domain_error when an
/// energy in the window is not positive (decayed to round-off).
DecayFit fit_decay_rate(const EnergyTrace& trace, double t_a, double t_b);

}  // namespace bresse
