#pragma once

#include <string>
#include <vector>

#include "bresse/shooting.hpp"
#include "bresse/spectral.hpp"

namespace bresse {

struct CertifyOptions {
  std::size_t sweep_count = 401;
  int shooting_modes = 5;  // least-damped resolved modes cross-checked by shooting
  double clearance_floor = 1e-9;
  SpectrumOptions spectrum;
};

struct ShootingCheck {
  cdouble discrete;
  cdouble shooting;
  double delta = 0.0;
  bool converged = false;
};

struct StabilityCertificate {
  bool pass = false;
  std::vector<std::string> culprits;
  std::size_t N = 0;
  BresseParams params;
  double lambda_max = 0.0;
  double spectral_abscissa = 0.0;
  double resolved_abscissa = 0.0;
  double resolved_cutoff = 0.0;
  double imag_axis_clearance = 0.0;
  double resolvent_sup = 0.0;
  double resolvent_argmax = 0.0;
  std::vector<double> poles;
  double mu_candidate = 0.0;  // -resolved_abscissa
  std::vector<ShootingCheck> shooting;
};

/// Bundles resolved abscissa < 0, clearance > clearance_floor, a finite
/// resolvent sup on [-lambda_max, lambda_max] and agreement of the least-damped
/// discrete modes with shooting roots to 1e-2 (1 + |lambda|).
StabilityCertificate certify_stability(const BresseParams& p, std::size_t N, double lambda_max,
                                       const CertifyOptions& opts = {});

}  // namespace bresse
