#include "bresse/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include "bresse/errors.hpp"
#include "bresse/generator.hpp"
#include "bresse/linalg.hpp"

namespace bresse {

namespace {

constexpr double kSingularTolerance = 1e-12;
constexpr double kRitzTolerance = 1e-10;

using ComplexSparse = Eigen::SparseMatrix<cdouble>;

void sort_spectrum(std::vector<cdouble>& ev) {
  std::sort(ev.begin(), ev.end(), [](cdouble a, cdouble b) {
    if (a.imag() != b.imag()) return a.imag() < b.imag();
    return a.real() < b.real();
  });
}

std::vector<cdouble> dense_eigenvalues(const Pencil& pencil) {
  const Eigen::MatrixXd B = weighted_generator(pencil);
  Eigen::EigenSolver<Eigen::MatrixXd> es(B, false);
  if (es.info() != Eigen::Success) throw Error("compute_spectrum: dense eigensolver did not converge");
  const Eigen::VectorXcd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

bool contains(const std::vector<cdouble>& ev, cdouble z) {
  return std::any_of(ev.begin(), ev.end(),
                     [&](cdouble e) { return std::abs(e - z) <= 1e-8 * (1.0 + std::abs(z)); });
}

std::vector<cdouble> shift_invert_eigenvalues(const Pencil& pc, const SpectrumOptions& opts) {
  const Eigen::Index n = pc.M.rows();
  const ComplexSparse M = pc.M.cast<cdouble>(), K = pc.K.cast<cdouble>(), D = pc.D.cast<cdouble>();
  std::vector<cdouble> found;
  const double radius = 0.75 * opts.shift_spacing;
  // Offset keeps shifts off exactly conservative frequencies.
  const double offset = 0.0137 * opts.shift_spacing;
  std::uint64_t seed = 0x5eed;
  for (double t = offset; t <= opts.imag_window + radius; t += opts.shift_spacing) {
    const cdouble sigma(0.0, t);
    ComplexSparse S = K + sigma * D + (sigma * sigma) * M;
    S.makeCompressed();
    Eigen::SparseLU<ComplexSparse> lu;
    lu.compute(S);
    if (lu.info() != Eigen::Success) throw Error("compute_spectrum: shift-invert factorization failed");
    const auto op = [&](const Eigen::VectorXcd& z) {
      const Eigen::VectorXcd x = z.head(n), y = z.tail(n);
      Eigen::VectorXcd out(2 * n);
      const Eigen::VectorXcd u = lu.solve(Eigen::VectorXcd(-(M * y) - D * x - sigma * (M * x)));
      out << u, x + sigma * u;
      return out;
    };
    for (const RitzPair& r : arnoldi_ritz(op, 2 * n, opts.krylov_dim, seed++)) {
      if (r.residual > kRitzTolerance || r.value == 0.0) continue;
      const cdouble lam = sigma + 1.0 / r.value;
      if (std::abs(lam - sigma) > radius || std::abs(lam.imag()) > opts.imag_window) continue;
      if (!contains(found, lam)) found.push_back(lam);
      const cdouble cj = std::conj(lam);
      if (!contains(found, cj)) found.push_back(cj);
    }
  }
  return found;
}

SpectrumReport make_report(std::vector<cdouble> ev, const FemSystem& sys, bool partial) {
  sort_spectrum(ev);
  SpectrumReport r;
  r.N = sys.elements();
  r.params = sys.params;
  r.partial = partial;
  r.resolved_cutoff = std::numbers::pi * wave_speeds(sys.params).min() / (3.0 * sys.grid.h());
  r.spectral_abscissa = -std::numeric_limits<double>::infinity();
  r.resolved_abscissa = -std::numeric_limits<double>::infinity();
  r.imag_axis_clearance = std::numeric_limits<double>::infinity();
  for (cdouble z : ev) {
    r.spectral_abscissa = std::max(r.spectral_abscissa, z.real());
    if (std::abs(z.imag()) <= r.resolved_cutoff) r.resolved_abscissa = std::max(r.resolved_abscissa, z.real());
    r.imag_axis_clearance = std::min(r.imag_axis_clearance, std::abs(z.real()));
  }
  if (ev.empty()) r.imag_axis_clearance = 0.0;
  r.eigenvalues = std::move(ev);
  return r;
}

}  // namespace

Eigen::MatrixXd weighted_generator(const Pencil& pc) {
  const Eigen::Index n = pc.M.rows();
  const Eigen::LLT<Eigen::MatrixXd> lk{Eigen::MatrixXd(pc.K)};
  if (lk.info() != Eigen::Success) throw CoercivityError("weighted_generator: K is not positive definite");
  const Eigen::LLT<Eigen::MatrixXd> lm{Eigen::MatrixXd(pc.M)};
  if (lm.info() != Eigen::Success) throw Error("weighted_generator: M is not positive definite");
  const Eigen::MatrixXd LK = lk.matrixL();
  const auto LM = lm.matrixL();
  const Eigen::MatrixXd X = LM.solve(LK);
  const Eigen::MatrixXd half = LM.solve(Eigen::MatrixXd(pc.D));
  const Eigen::MatrixXd Dw = LM.solve(Eigen::MatrixXd(half.transpose()));

  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  B.topRightCorner(n, n) = X.transpose();
  B.bottomLeftCorner(n, n) = -X;
  B.bottomRightCorner(n, n) = -0.5 * (Dw + Dw.transpose());
  return B;
}

SpectrumReport compute_spectrum(const Pencil& pencil, const FemSystem& sys, const SpectrumOptions& opts) {
  if (2 * pencil.M.rows() <= opts.dense_limit) return make_report(dense_eigenvalues(pencil), sys, false);
  return make_report(shift_invert_eigenvalues(pencil, opts), sys, true);
}

SpectrumReport compute_spectrum(const FemSystem& sys, const SpectrumOptions& opts) {
  return compute_spectrum(full_pencil(sys), sys, opts);
}

ResolventEvaluator::ResolventEvaluator(const FemSystem& sys) : ResolventEvaluator(full_pencil(sys)) {}

ResolventEvaluator::ResolventEvaluator(const Pencil& pencil) {
  const Eigen::MatrixXd B = weighted_generator(pencil);
  frobenius_ = B.norm();
  Eigen::HessenbergDecomposition<Eigen::MatrixXd> hd(B);
  hessenberg_ = hd.matrixH();
}

double ResolventEvaluator::smallest_singular_value(double lambda) const {
  const ShiftedHessenbergLU lu(hessenberg_, cdouble(0.0, lambda));
  if (lu.min_pivot() == 0.0) return 0.0;
  const auto op = [&](const Eigen::VectorXcd& x) { return lu.solve_adjoint(lu.solve(x)); };
  const LanczosResult top = lanczos_largest(op, hessenberg_.rows(), 0x1a2c05);
  if (!std::isfinite(top.value) || top.value <= 0.0) return 0.0;
  return 1.0 / std::sqrt(top.value);
}

double ResolventEvaluator::norm(double lambda) const {
  const double smin = smallest_singular_value(lambda);
  if (smin <= kSingularTolerance * frobenius_) {
    throw NearSingularError(lambda, "resolvent_norm: i*lambda is numerically an eigenvalue (lambda = " +
                                        std::to_string(lambda) + ")");
  }
  return 1.0 / smin;
}

double resolvent_norm(double lambda, const FemSystem& sys) { return ResolventEvaluator(sys).norm(lambda); }

namespace {

std::vector<double> sweep_grid(double lambda_max, std::size_t count) {
  const std::size_t half = std::max<std::size_t>(count / 2, 4);
  const std::size_t n_lin = half / 2;
  const std::size_t n_log = half - n_lin;
  const double l1 = lambda_max / 10.0;
  std::vector<double> pos;
  for (std::size_t k = 0; k <= n_lin; ++k) pos.push_back(l1 * static_cast<double>(k) / static_cast<double>(n_lin));
  for (std::size_t k = 1; k <= n_log; ++k) {
    pos.push_back(l1 * std::pow(lambda_max / l1, static_cast<double>(k) / static_cast<double>(n_log)));
  }
  pos.back() = lambda_max;
  std::vector<double> grid;
  for (std::size_t k = pos.size(); k-- > 1;) grid.push_back(-pos[k]);
  grid.insert(grid.end(), pos.begin(), pos.end());
  return grid;
}

}  // namespace

std::vector<double> eigen_frequencies(const SpectrumReport& report, double lambda_max) {
  std::vector<double> out;
  for (cdouble z : report.eigenvalues)
    if (std::abs(z.imag()) <= lambda_max) out.push_back(z.imag());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)); }),
            out.end());
  return out;
}

ResolventSweep resolvent_sweep(double lambda_max, std::size_t count, const FemSystem& sys,
                               const std::vector<double>& probes, int refine_peaks) {
  return resolvent_sweep(lambda_max, count, ResolventEvaluator(sys), probes, refine_peaks);
}

ResolventSweep resolvent_sweep(double lambda_max, std::size_t count, const ResolventEvaluator& eval,
                               const std::vector<double>& probes, int refine_peaks) {
  if (!(lambda_max > 0.0)) throw std::invalid_argument("resolvent_sweep: lambda_max must be positive");
  ResolventSweep sw;
  sw.lambdas = sweep_grid(lambda_max, count);
  const std::size_t n = sw.lambdas.size();
  sw.norms.assign(n, 0.0);
  constexpr double inf = std::numeric_limits<double>::infinity();

  const auto add_pole = [&](double l) {
    for (double p : sw.poles)
      if (std::abs(p - l) <= 1e-9 * (1.0 + std::abs(l))) return;
    sw.poles.push_back(l);
  };

  for (std::size_t i = 0; i < n; ++i) {
    const double l = sw.lambdas[i];
    try {
      sw.norms[i] = eval.norm(l);
    } catch (const NearSingularError&) {
      const double step = i + 1 < n ? sw.lambdas[i + 1] - l : l - sw.lambdas[i - 1];
      try {
        sw.norms[i] = eval.norm(l + 0.5 * step);
      } catch (const NearSingularError&) {
        sw.norms[i] = inf;
        add_pole(l);
      }
    }
  }

  sw.sup_norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sw.norms[i] > sw.sup_norm) {
      sw.sup_norm = sw.norms[i];
      sw.argmax = sw.lambdas[i];
    }
  }

  for (double l : probes) {
    if (std::abs(l) > lambda_max) continue;
    try {
      const double v = eval.norm(l);
      if (v > sw.sup_norm) {
        sw.sup_norm = v;
        sw.argmax = l;
      }
    } catch (const NearSingularError&) {
      add_pole(l);
    }
  }

  // Local maxima, highest first.
  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(sw.norms[i])) continue;
    const bool left = i == 0 || sw.norms[i] >= sw.norms[i - 1];
    const bool right = i + 1 == n || sw.norms[i] >= sw.norms[i + 1];
    if (left && right) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return sw.norms[a] > sw.norms[b]; });
  if (peaks.size() > static_cast<std::size_t>(std::max(refine_peaks, 0))) peaks.resize(static_cast<std::size_t>(std::max(refine_peaks, 0)));

  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t i : peaks) {
    double a = sw.lambdas[i == 0 ? 0 : i - 1];
    double b = sw.lambdas[i + 1 == n ? n - 1 : i + 1];
    try {
      double c = b - g * (b - a), d = a + g * (b - a);
      double fc = eval.norm(c), fd = eval.norm(d);
      for (int it = 0; it < 80 && (b - a) > 1e-12 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
        if (fc > fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - g * (b - a);
          fc = eval.norm(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + g * (b - a);
          fd = eval.norm(d);
        }
      }
      const double best = fc > fd ? fc : fd;
      if (best > sw.sup_norm) {
        sw.sup_norm = best;
        sw.argmax = fc > fd ? c : d;
      }
    } catch (const NearSingularError& e) {
      add_pole(e.lambda());
    }
  }

  if (!sw.poles.empty()) {
    std::sort(sw.poles.begin(), sw.poles.end());
    sw.sup_norm = inf;
    sw.argmax = *std::min_element(sw.poles.begin(), sw.poles.end(),
                                  [](double a, double b) { return std::abs(a) < std::abs(b); });
  }
  return sw;
}

}  // namespace bresse
