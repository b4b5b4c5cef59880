#include "bresse/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace bresse {

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) { return a.exp(); }

ShiftedHessenbergLU::ShiftedHessenbergLU(const Eigen::MatrixXd& h, cdouble z) {
  const Eigen::Index n = h.rows();
  upper_ = -h.cast<cdouble>();
  upper_.diagonal().array() += z;
  mult_.assign(static_cast<std::size_t>(std::max<Eigen::Index>(n - 1, 0)), 0.0);
  swapped_.assign(mult_.size(), 0);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (std::abs(upper_(k + 1, k)) > std::abs(upper_(k, k))) {
      upper_.row(k).segment(k, n - k).swap(upper_.row(k + 1).segment(k, n - k));
      swapped_[static_cast<std::size_t>(k)] = 1;
    }
    const cdouble piv = upper_(k, k);
    const cdouble m = piv == 0.0 ? cdouble(0.0) : upper_(k + 1, k) / piv;
    mult_[static_cast<std::size_t>(k)] = m;
    upper_.row(k + 1).segment(k, n - k) -= m * upper_.row(k).segment(k, n - k);
    upper_(k + 1, k) = 0.0;
  }
  min_pivot_ = n > 0 ? upper_.diagonal().cwiseAbs().minCoeff() : 0.0;
}

Eigen::VectorXcd ShiftedHessenbergLU::solve(const Eigen::VectorXcd& b) const {
  Eigen::VectorXcd c = b;
  for (std::size_t k = 0; k < mult_.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    if (swapped_[k]) std::swap(c[i], c[i + 1]);
    c[i + 1] -= mult_[k] * c[i];
  }
  return upper_.triangularView<Eigen::Upper>().solve(c);
}

Eigen::VectorXcd ShiftedHessenbergLU::solve_adjoint(const Eigen::VectorXcd& b) const {
  Eigen::VectorXcd z = upper_.adjoint().triangularView<Eigen::Lower>().solve(b);
  for (std::size_t k = mult_.size(); k-- > 0;) {
    const auto i = static_cast<Eigen::Index>(k);
    z[i] -= std::conj(mult_[k]) * z[i + 1];
    if (swapped_[k]) std::swap(z[i], z[i + 1]);
  }
  return z;
}

namespace {

Eigen::VectorXcd random_unit(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXcd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = cdouble(g(rng), g(rng));
  return x / x.norm();
}

}  // namespace

LanczosResult lanczos_largest(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& op,
                              Eigen::Index n, std::uint64_t seed, int max_iter, double tol) {
  const int m = static_cast<int>(std::min<Eigen::Index>(max_iter, n));
  Eigen::MatrixXcd Q(n, m + 1);
  std::vector<double> alpha, beta;
  Q.col(0) = random_unit(n, seed);
  LanczosResult res;
  double prev = 0.0;
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXcd w = op(Q.col(j));
    const double a = Q.col(j).dot(w).real();
    alpha.push_back(a);
    // Full reorthogonalization, twice.
    for (int pass = 0; pass < 2; ++pass) {
      w -= Q.leftCols(j + 1) * (Q.leftCols(j + 1).adjoint() * w);
    }
    const double bnorm = w.norm();

    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(j + 1, j + 1);
    for (int i = 0; i <= j; ++i) {
      T(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i < j) T(i, i + 1) = T(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    const double top = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(T, Eigen::EigenvaluesOnly)
                           .eigenvalues()
                           .maxCoeff();
    res.value = top;
    res.iterations = j + 1;
    if (j > 0 && std::abs(top - prev) <= tol * std::abs(top)) {
      res.converged = true;
      break;
    }
    prev = top;
    if (bnorm <= 1e-300 || j + 1 == n) {
      res.converged = true;  // invariant subspace found
      break;
    }
    beta.push_back(bnorm);
    Q.col(j + 1) = w / bnorm;
  }
  return res;
}

RootResult muller(const std::function<cdouble(cdouble)>& f, cdouble z0, double step, double tol,
                  int max_iter) {
  cdouble x0 = z0 - step, x1 = z0 + step, x2 = z0;
  cdouble f0 = f(x0), f1 = f(x1), f2 = f(x2);
  RootResult r{x2, f2, 0, false};
  if (f2 == 0.0) {
    r.converged = true;
    return r;
  }
  for (int it = 1; it <= max_iter; ++it) {
    const cdouble h1 = x1 - x0, h2 = x2 - x1;
    const cdouble d1 = (f1 - f0) / h1, d2 = (f2 - f1) / h2;
    const cdouble a = (d2 - d1) / (h2 + h1);
    const cdouble b = a * h2 + d2;
    const cdouble disc = std::sqrt(b * b - 4.0 * a * f2);
    const cdouble den = std::abs(b + disc) > std::abs(b - disc) ? b + disc : b - disc;
    const cdouble dz = den == 0.0 ? cdouble(step) : -2.0 * f2 / den;
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = f2;
    x2 = x2 + dz;
    f2 = f(x2);
    r = {x2, f2, it, false};
    if (!std::isfinite(x2.real()) || !std::isfinite(x2.imag())) return r;
    if (f2 == 0.0 || std::abs(dz) <= tol * (1.0 + std::abs(x2))) {
      r.converged = true;
      return r;
    }
  }
  return r;
}

std::vector<RitzPair> arnoldi_ritz(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& op,
                                   Eigen::Index n, int m, std::uint64_t seed) {
  m = static_cast<int>(std::min<Eigen::Index>(m, n));
  Eigen::MatrixXcd V(n, m + 1);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
  V.col(0) = random_unit(n, seed);
  int k = m;
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXcd w = op(V.col(j));
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXcd c = V.leftCols(j + 1).adjoint() * w;
      H.col(j).head(j + 1) += c;
      w -= V.leftCols(j + 1) * c;
    }
    H(j + 1, j) = w.norm();
    if (std::abs(H(j + 1, j)) <= 1e-14 * H.col(j).head(j + 1).norm()) {
      k = j + 1;
      break;
    }
    V.col(j + 1) = w / H(j + 1, j);
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H.topLeftCorner(k, k));
  if (es.info() != Eigen::Success) throw std::runtime_error("arnoldi_ritz: Hessenberg eigensolve failed");
  std::vector<RitzPair> out;
  const double hnext = k < m ? 0.0 : std::abs(H(m, m - 1));
  for (Eigen::Index i = 0; i < k; ++i) {
    const cdouble theta = es.eigenvalues()[i];
    const double last = std::abs(es.eigenvectors()(k - 1, i)) / es.eigenvectors().col(i).norm();
    const double est = hnext * last;
    out.push_back({theta, std::abs(theta) > 0.0 ? est / std::abs(theta) : INFINITY});
  }
  return out;
}

}  // namespace bresse
