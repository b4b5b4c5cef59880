#include "bresse/certify.hpp"

#include <algorithm>
#include <cmath>

#include "bresse/errors.hpp"
#include "bresse/fem.hpp"

namespace bresse {

StabilityCertificate certify_stability(const BresseParams& p, std::size_t N, double lambda_max,
                                       const CertifyOptions& opts) {
  const FemSystem sys = build_system(p, N);
  StabilityCertificate c;
  c.N = N;
  c.params = p;
  c.lambda_max = lambda_max;

  const SpectrumReport spec = compute_spectrum(sys, opts.spectrum);
  c.spectral_abscissa = spec.spectral_abscissa;
  c.resolved_abscissa = spec.resolved_abscissa;
  c.resolved_cutoff = spec.resolved_cutoff;
  c.imag_axis_clearance = spec.imag_axis_clearance;
  c.mu_candidate = -spec.resolved_abscissa;
  if (!(spec.resolved_abscissa < 0.0)) c.culprits.push_back("spectral_abscissa");
  if (!(spec.imag_axis_clearance > opts.clearance_floor)) c.culprits.push_back("imag_axis_clearance");

  const ResolventSweep sw = resolvent_sweep(lambda_max, opts.sweep_count, sys, eigen_frequencies(spec, lambda_max));
  c.resolvent_sup = sw.sup_norm;
  c.resolvent_argmax = sw.argmax;
  c.poles = sw.poles;
  if (!std::isfinite(sw.sup_norm)) c.culprits.push_back("resolvent_sup");

  // Least-damped resolved modes in the closed upper half-plane.
  std::vector<cdouble> seeds;
  for (cdouble z : spec.eigenvalues)
    if (z.imag() >= 0.0 && std::abs(z.imag()) <= spec.resolved_cutoff) seeds.push_back(z);
  std::sort(seeds.begin(), seeds.end(), [](cdouble a, cdouble b) { return a.real() > b.real(); });
  if (seeds.size() > static_cast<std::size_t>(opts.shooting_modes)) seeds.resize(static_cast<std::size_t>(opts.shooting_modes));
  const ShootingResult shot = find_eigen_shooting(seeds, p);
  bool shooting_ok = !shot.seeds.empty();
  for (const SeedOutcome& o : shot.seeds) {
    ShootingCheck chk{o.seed, o.root, std::abs(o.seed - o.root), o.converged};
    shooting_ok = shooting_ok && chk.converged && chk.delta <= 1e-2 * (1.0 + std::abs(o.seed));
    c.shooting.push_back(chk);
  }
  if (!shooting_ok) c.culprits.push_back("shooting");

  c.pass = c.culprits.empty();
  return c;
}

}  // namespace bresse
