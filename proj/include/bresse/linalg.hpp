#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace bresse {

using cdouble = std::complex<double>;

/// Matrix exponential (Pade-13 scaling and squaring from Eigen's MatrixFunctions).
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

/// LU of (z I - H) for upper Hessenberg H with adjacent-row pivoting. O(n^2)
/// to build and per solve, so one Hessenberg reduction serves a whole sweep.
class ShiftedHessenbergLU {
 public:
  ShiftedHessenbergLU(const Eigen::MatrixXd& hessenberg, cdouble z);

  /// Smallest |pivot|; zero means exactly singular.
  double min_pivot() const { return min_pivot_; }
  Eigen::VectorXcd solve(const Eigen::VectorXcd& b) const;          // (zI - H) x = b
  Eigen::VectorXcd solve_adjoint(const Eigen::VectorXcd& b) const;  // (zI - H)^* x = b

 private:
  Eigen::MatrixXcd upper_;
  std::vector<cdouble> mult_;
  std::vector<char> swapped_;
  double min_pivot_ = 0.0;
};

struct LanczosResult {
  double value = 0.0;  // largest eigenvalue
  int iterations = 0;
  bool converged = false;
};

/// Largest eigenvalue of a Hermitian positive semidefinite operator given by
/// its action, Lanczos with full reorthogonalization.
LanczosResult lanczos_largest(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& op,
                              Eigen::Index n, std::uint64_t seed, int max_iter = 120,
                              double tol = 1e-14);

struct RootResult {
  cdouble root;
  cdouble value;
  int iterations = 0;
  bool converged = false;
};

/// Muller's method from three starting points near z0 (z0, z0 +- step).
/// Converges when the update |dz| <= tol (1 + |z|).
RootResult muller(const std::function<cdouble(cdouble)>& f, cdouble z0, double step,
                  double tol = 1e-13, int max_iter = 100);

struct RitzPair {
  cdouble value;
  double residual;  // estimated residual of the inverted operator, relative to |theta|
};

/// Arnoldi on a linear operator returning the Ritz values of its m-step
/// Krylov space; used with shift-invert operators.
std::vector<RitzPair> arnoldi_ritz(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& op,
                                   Eigen::Index n, int m, std::uint64_t seed);

}  // namespace bresse
