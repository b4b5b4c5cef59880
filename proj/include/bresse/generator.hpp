#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>

#include <Eigen/SparseCholesky>

#include "bresse/fem.hpp"
#include "bresse/state.hpp"

namespace bresse {

using cdouble = std::complex<double>;

/// Real sparse matrix times complex vector, done part by part.
Eigen::VectorXcd multiply(const SparseMat& a, const Eigen::VectorXcd& x);

/// Discrete semigroup generator A_h (u, v) -> (v, -M^{-1}(K u + D v)).
///
/// Holds the system by value and the mass/stiffness factorizations behind
/// shared immutable pointers, so copies are cheap and concurrent use is safe.
class Generator {
 public:
  explicit Generator(FemSystem sys);

  const FemSystem& system() const { return sys_; }
  Eigen::Index dofs() const { return sys_.size(); }

  RealState apply(const RealState& U) const;
  ComplexState apply(const ComplexState& U) const;

  Eigen::VectorXd solve_mass(const Eigen::VectorXd& rhs) const;
  Eigen::VectorXcd solve_mass(const Eigen::VectorXcd& rhs) const;
  /// Throws CoercivityError when K is not positive definite.
  Eigen::VectorXcd solve_stiffness(const Eigen::VectorXcd& rhs) const;

 private:
  FemSystem sys_;
  std::shared_ptr<const Eigen::SimplicialLDLT<SparseMat>> mass_;
  std::shared_ptr<const Eigen::SimplicialLDLT<SparseMat>> stiffness_;
  bool stiffness_pd_ = false;
};

/// <U1, U2>_H = u2^T K conj(u1) + v2^T M conj(v1); twice the physical energy
/// on the diagonal.
cdouble energy_inner(const ComplexState& U1, const ComplexState& U2, const FemSystem& sys);
double energy_inner(const RealState& U1, const RealState& U2, const FemSystem& sys);
double energy_norm(const ComplexState& U, const FemSystem& sys);
double energy_norm(const RealState& U, const FemSystem& sys);

inline RealState apply_generator(const RealState& U, const Generator& gen) { return gen.apply(U); }
inline ComplexState apply_generator(const ComplexState& U, const Generator& gen) { return gen.apply(U); }

struct DissipativityReport {
  double max_residual = 0.0;           // max |Re<A U, U> + v^T D v|
  double max_relative_residual = 0.0;  // same, divided by ||U||_H^2
  int trials = 0;
};

/// Random real states; the residual of Re<A_h U, U>_H = -v^T D v.
DissipativityReport check_dissipativity(const Generator& gen, int trials, std::uint64_t seed);

/// Solves A_h U = F through K u = -(M f_v + D f_u), v = f_u; the D f_u term is
/// the boundary part gamma_j f_j(0) of the load functional. Checks
/// ||A_h U - F|| <= 1e-10 ||F||.
ComplexState solve_static(const ComplexState& F, const Generator& gen);

enum class ResolventForm {
  schur,  // (K - lambda^2 M + i lambda D) u = M f_v + (i lambda M + D) f_u
  block,  // full 6N system, kept for cross-checks
};

/// Solves (i lambda I - A_h) U = F. Throws NearSingularError (carrying lambda)
/// when the H-norm residual exceeds 1e-10 ||F||_H.
ComplexState solve_resolvent(double lambda, const ComplexState& F, const Generator& gen,
                             ResolventForm form = ResolventForm::schur);

/// ||(i lambda I - A_h) U - F||_H.
double resolvent_residual(double lambda, const ComplexState& U, const ComplexState& F,
                          const Generator& gen);

/// Point values of a resolvent solution at both ends. Slopes come from the
/// natural boundary conditions at x = 0 and from the Galerkin reaction of the
/// eliminated dofs at x = L, which is accurate to O(h^2) while the one-sided
/// element slope is only O(h).
struct BoundaryTraces {
  std::array<cdouble, 3> disp0{};   // phi, psi, w at 0
  std::array<cdouble, 3> vel0{};    // Phi, Psi, W at 0
  std::array<cdouble, 3> slope0{};  // phi_x, psi_x, w_x at 0
  std::array<cdouble, 3> slopeL{};  // phi_x, psi_x, w_x at L
};

BoundaryTraces boundary_traces(double lambda, const ComplexState& U, const ComplexState& F,
                               const Generator& gen);

struct BoundaryEstimateRatios {
  double r0 = 0.0;  // boundary velocities vs ||U|| ||F||
  double r1 = 0.0;  // lambda^2 * boundary displacements vs ||U|| ||F|| + ||F||^2
  double r2 = 0.0;  // boundary slopes vs (1 + 1/lambda^2)||U|| ||F|| + ||F||^2 / lambda^2
};

/// Returns zeros when F = 0.
BoundaryEstimateRatios verify_boundary_estimates(double lambda, const ComplexState& F,
                                                 const Generator& gen);

}  // namespace bresse
