#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "bresse/fem.hpp"

namespace bresse {

using cdouble = std::complex<double>;

struct SpectrumOptions {
  /// Largest linearization size (2n) handled by the dense eigensolver.
  Eigen::Index dense_limit = 1200;
  /// Above the dense limit: shift-invert Arnoldi collects eigenvalues with
  /// |Im| <= imag_window along the imaginary axis.
  double imag_window = 40.0;
  int krylov_dim = 60;
  double shift_spacing = 4.0;
};

struct SpectrumReport {
  std::vector<cdouble> eigenvalues;  // sorted by Im, then Re
  double spectral_abscissa = 0.0;    // max Re over all computed eigenvalues
  /// max Re over eigenvalues the mesh resolves, |Im| <= resolved_cutoff
  /// = pi c_min / (3h) (six elements per wavelength).
  double resolved_abscissa = 0.0;
  double resolved_cutoff = 0.0;
  double imag_axis_clearance = 0.0;  // min |Re|
  std::size_t N = 0;
  BresseParams params;
  bool partial = false;  // true when only the shift-invert window was computed
};

/// Spectrum of A_h for the full system.
SpectrumReport compute_spectrum(const FemSystem& sys, const SpectrumOptions& opts = {});

/// Spectrum of lambda^2 M + lambda D + K for an arbitrary pencil on the grid of
/// sys (e.g. a single decoupled field).
SpectrumReport compute_spectrum(const Pencil& pencil, const FemSystem& sys,
                                const SpectrumOptions& opts = {});

/// Dense matrix of C A_h C^{-1} with blockdiag(K, M) = C^T C, which is
/// [[0, X^T], [-X, -L_M^{-1} D L_M^{-T}]], X = L_M^{-1} L_K. Its Euclidean
/// geometry is the H geometry of A_h. Throws CoercivityError if K is not SPD.
Eigen::MatrixXd weighted_generator(const Pencil& pencil);

/// ||(i lambda - A_h)^{-1}||_H for many lambda off one Hessenberg reduction of
/// the weighted generator.
class ResolventEvaluator {
 public:
  explicit ResolventEvaluator(const FemSystem& sys);
  explicit ResolventEvaluator(const Pencil& pencil);

  /// Throws NearSingularError when sigma_min(i lambda - A_h) <= 1e-12 ||B||_F.
  double norm(double lambda) const;
  /// sigma_min of (i lambda - A_h) in the H geometry, no singularity check.
  double smallest_singular_value(double lambda) const;
  double scale() const { return frobenius_; }

 private:
  Eigen::MatrixXd hessenberg_;
  double frobenius_ = 0.0;
};

double resolvent_norm(double lambda, const FemSystem& sys);

struct ResolventSweep {
  std::vector<double> lambdas;  // increasing, symmetric about 0
  std::vector<double> norms;
  double sup_norm = 0.0;  // +inf when a pole was hit
  double argmax = 0.0;
  std::vector<double> poles;  // lambdas where the operator was numerically singular
};

/// Symmetric grid on [-lambda_max, lambda_max]: linear on |lambda| <= lambda_max/10,
/// logarithmic beyond, about count points in total; the highest local maxima
/// are then refined by golden-section search. A singular refinement point is
/// recorded as a pole and makes the sup infinite. A singular grid point is
/// shifted by half a step once before it counts as a pole.
///
/// probes are extra frequencies, typically Im of computed eigenvalues, whose
/// narrow peaks a fixed grid can step over. They enter the sup but not the
/// grid arrays.
ResolventSweep resolvent_sweep(double lambda_max, std::size_t count, const FemSystem& sys,
                               const std::vector<double>& probes = {}, int refine_peaks = 4);
ResolventSweep resolvent_sweep(double lambda_max, std::size_t count, const ResolventEvaluator& eval,
                               const std::vector<double>& probes = {}, int refine_peaks = 4);

/// Im of the eigenvalues within [-lambda_max, lambda_max], deduplicated.
std::vector<double> eigen_frequencies(const SpectrumReport& report, double lambda_max);

}  // namespace bresse
