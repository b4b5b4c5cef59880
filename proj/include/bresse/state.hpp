#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace bresse {

/// Discrete phase-space element: displacements u = (phi, psi, w) and
/// velocities v = (Phi, Psi, W) at the 3N free dofs.
template <class Scalar>
struct BasicState {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vector u;
  Vector v;

  static BasicState zero(Eigen::Index n) { return {Vector::Zero(n), Vector::Zero(n)}; }
  Eigen::Index size() const { return u.size(); }

  void check(Eigen::Index n) const {
    if (u.size() != n || v.size() != n) {
      throw std::invalid_argument("state dimension does not match the system (expected 3N)");
    }
  }

  BasicState operator+(const BasicState& o) const { return {u + o.u, v + o.v}; }
  BasicState operator-(const BasicState& o) const { return {u - o.u, v - o.v}; }
  BasicState operator*(Scalar s) const { return {u * s, v * s}; }
};

using RealState = BasicState<double>;
using ComplexState = BasicState<std::complex<double>>;

inline ComplexState to_complex(const RealState& s) {
  return {s.u.cast<std::complex<double>>(), s.v.cast<std::complex<double>>()};
}

}  // namespace bresse
