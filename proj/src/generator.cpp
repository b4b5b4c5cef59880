#include "bresse/generator.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/SparseLU>

#include "bresse/errors.hpp"
#include "bresse/sampling.hpp"

namespace bresse {

namespace {

constexpr cdouble kI{0.0, 1.0};
constexpr double kSolveTolerance = 1e-10;

using ComplexSparse = Eigen::SparseMatrix<cdouble>;

ComplexSparse complexify(const SparseMat& a) { return a.cast<cdouble>(); }

}  // namespace

Eigen::VectorXcd multiply(const SparseMat& a, const Eigen::VectorXcd& x) {
  const Eigen::VectorXd re = a * x.real();
  const Eigen::VectorXd im = a * x.imag();
  return re.cast<cdouble>() + kI * im.cast<cdouble>();
}

Generator::Generator(FemSystem sys) : sys_(std::move(sys)) {
  auto mass = std::make_shared<Eigen::SimplicialLDLT<SparseMat>>(sys_.M);
  if (mass->info() != Eigen::Success) throw Error("Generator: mass matrix factorization failed");
  mass_ = std::move(mass);

  auto stiff = std::make_shared<Eigen::SimplicialLDLT<SparseMat>>(sys_.K);
  stiffness_pd_ = stiff->info() == Eigen::Success && (stiff->vectorD().array() > 0.0).all();
  stiffness_ = std::move(stiff);
}

Eigen::VectorXd Generator::solve_mass(const Eigen::VectorXd& rhs) const { return mass_->solve(rhs); }

Eigen::VectorXcd Generator::solve_mass(const Eigen::VectorXcd& rhs) const {
  const Eigen::VectorXd re = mass_->solve(Eigen::VectorXd(rhs.real()));
  const Eigen::VectorXd im = mass_->solve(Eigen::VectorXd(rhs.imag()));
  return re.cast<cdouble>() + kI * im.cast<cdouble>();
}

Eigen::VectorXcd Generator::solve_stiffness(const Eigen::VectorXcd& rhs) const {
  if (!stiffness_pd_) {
    throw CoercivityError("stiffness matrix is not positive definite: the form B lost coercivity");
  }
  const Eigen::VectorXd re = stiffness_->solve(Eigen::VectorXd(rhs.real()));
  const Eigen::VectorXd im = stiffness_->solve(Eigen::VectorXd(rhs.imag()));
  return re.cast<cdouble>() + kI * im.cast<cdouble>();
}

RealState Generator::apply(const RealState& U) const {
  U.check(dofs());
  return {U.v, -solve_mass(Eigen::VectorXd(sys_.K * U.u + sys_.D * U.v))};
}

ComplexState Generator::apply(const ComplexState& U) const {
  U.check(dofs());
  return {U.v, -solve_mass(Eigen::VectorXcd(multiply(sys_.K, U.u) + multiply(sys_.D, U.v)))};
}

cdouble energy_inner(const ComplexState& U1, const ComplexState& U2, const FemSystem& sys) {
  U1.check(sys.size());
  U2.check(sys.size());
  const Eigen::VectorXcd ku = multiply(sys.K, U1.u.conjugate());
  const Eigen::VectorXcd mv = multiply(sys.M, U1.v.conjugate());
  return U2.u.cwiseProduct(ku).sum() + U2.v.cwiseProduct(mv).sum();
}

double energy_inner(const RealState& U1, const RealState& U2, const FemSystem& sys) {
  U1.check(sys.size());
  U2.check(sys.size());
  return U2.u.dot(sys.K * U1.u) + U2.v.dot(sys.M * U1.v);
}

double energy_norm(const ComplexState& U, const FemSystem& sys) {
  return std::sqrt(std::max(0.0, energy_inner(U, U, sys).real()));
}

double energy_norm(const RealState& U, const FemSystem& sys) {
  return std::sqrt(std::max(0.0, energy_inner(U, U, sys)));
}

DissipativityReport check_dissipativity(const Generator& gen, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("check_dissipativity: trials must be >= 1");
  const FemSystem& sys = gen.system();
  DissipativityReport report;
  report.trials = trials;
  std::mt19937_64 seeds(seed);
  for (int t = 0; t < trials; ++t) {
    const RealState U = random_state(gen.dofs(), seeds());
    const RealState AU = gen.apply(U);
    const double lhs = energy_inner(AU, U, sys);
    const double loss = U.v.dot(sys.D * U.v);
    const double residual = std::abs(lhs + loss);
    const double norm2 = energy_inner(U, U, sys);
    report.max_residual = std::max(report.max_residual, residual);
    report.max_relative_residual = std::max(report.max_relative_residual, residual / norm2);
  }
  return report;
}

ComplexState solve_static(const ComplexState& F, const Generator& gen) {
  F.check(gen.dofs());
  const FemSystem& sys = gen.system();
  ComplexState U;
  U.v = F.u;
  U.u = -gen.solve_stiffness(multiply(sys.M, F.v) + multiply(sys.D, F.u));

  const double fnorm = energy_norm(F, sys);
  const double residual = energy_norm(gen.apply(U) - F, sys);
  if (residual > kSolveTolerance * fnorm) {
    throw CoercivityError("solve_static: residual " + std::to_string(residual) +
                          " exceeds tolerance; stiffness is numerically singular");
  }
  return U;
}

double resolvent_residual(double lambda, const ComplexState& U, const ComplexState& F,
                          const Generator& gen) {
  const ComplexState AU = gen.apply(U);
  const ComplexState r = U * cdouble(0.0, lambda) - AU - F;
  return energy_norm(r, gen.system());
}

ComplexState solve_resolvent(double lambda, const ComplexState& F, const Generator& gen,
                             ResolventForm form) {
  F.check(gen.dofs());
  const FemSystem& sys = gen.system();
  const Eigen::Index n = gen.dofs();
  const cdouble il = kI * lambda;
  ComplexState U;

  if (form == ResolventForm::schur) {
    ComplexSparse s = complexify(sys.K) - (lambda * lambda) * complexify(sys.M) + il * complexify(sys.D);
    s.makeCompressed();
    Eigen::SparseLU<ComplexSparse> lu;
    lu.compute(s);
    if (lu.info() != Eigen::Success) {
      throw NearSingularError(lambda, "solve_resolvent: singular pencil at lambda = " + std::to_string(lambda));
    }
    const Eigen::VectorXcd rhs = multiply(sys.M, F.v) + il * multiply(sys.M, F.u) + multiply(sys.D, F.u);
    U.u = lu.solve(rhs);
    U.v = il * U.u - F.u;
  } else {
    // [ i l I   -I         ] [u]   [f_u  ]
    // [ K       i l M + D  ] [v] = [M f_v]
    std::vector<Eigen::Triplet<cdouble>> trip;
    for (Eigen::Index i = 0; i < n; ++i) {
      trip.emplace_back(i, i, il);
      trip.emplace_back(i, n + i, -1.0);
    }
    const auto add = [&](const SparseMat& a, Eigen::Index col0, cdouble scale) {
      for (int k = 0; k < a.outerSize(); ++k)
        for (SparseMat::InnerIterator it(a, k); it; ++it)
          trip.emplace_back(n + it.row(), col0 + it.col(), scale * it.value());
    };
    add(sys.K, 0, 1.0);
    add(sys.M, n, il);
    add(sys.D, n, 1.0);
    ComplexSparse big(2 * n, 2 * n);
    big.setFromTriplets(trip.begin(), trip.end());
    big.makeCompressed();
    Eigen::SparseLU<ComplexSparse> lu;
    lu.compute(big);
    if (lu.info() != Eigen::Success) {
      throw NearSingularError(lambda, "solve_resolvent: singular block system at lambda = " + std::to_string(lambda));
    }
    Eigen::VectorXcd rhs(2 * n);
    rhs << F.u, multiply(sys.M, F.v);
    const Eigen::VectorXcd x = lu.solve(rhs);
    U.u = x.head(n);
    U.v = x.tail(n);
  }

  const double fnorm = energy_norm(F, sys);
  const double residual = resolvent_residual(lambda, U, F, gen);
  if (!std::isfinite(residual) || residual > kSolveTolerance * fnorm) {
    throw NearSingularError(lambda, "solve_resolvent: residual " + std::to_string(residual) +
                                        " exceeds tolerance at lambda = " + std::to_string(lambda));
  }
  return U;
}

BoundaryTraces boundary_traces(double lambda, const ComplexState& U, const ComplexState& F,
                               const Generator& gen) {
  const FemSystem& sys = gen.system();
  const BresseParams& p = sys.params;
  const std::size_t n = sys.elements();
  BoundaryTraces t;
  for (int f = 0; f < 3; ++f) {
    const auto i = dof(static_cast<Field>(f), 0, n);
    t.disp0[f] = U.u[i];
    t.vel0[f] = U.v[i];
  }
  t.slope0[0] = p.gamma1 * t.vel0[0] / p.kappa - t.disp0[1] - p.ell * t.disp0[2];
  t.slope0[1] = p.gamma2 * t.vel0[1] / p.b;
  t.slope0[2] = p.gamma3 * t.vel0[2] / p.k0 + p.ell * t.disp0[0];

  // Reaction of the clamped node: sigma = M_end (i l v - f_v) + K_end u.
  const Eigen::VectorXcd accel = cdouble(0.0, lambda) * U.v - F.v;
  const Eigen::VectorXcd sigma = multiply(sys.M_end, accel) + multiply(sys.K_end, U.u);
  t.slopeL[0] = sigma[0] / p.kappa;
  t.slopeL[1] = sigma[1] / p.b;
  t.slopeL[2] = sigma[2] / p.k0;
  return t;
}

BoundaryEstimateRatios verify_boundary_estimates(double lambda, const ComplexState& F,
                                                 const Generator& gen) {
  if (lambda == 0.0) throw std::invalid_argument("verify_boundary_estimates: lambda must be nonzero");
  const FemSystem& sys = gen.system();
  const double fnorm = energy_norm(F, sys);
  if (fnorm == 0.0) return {};
  const ComplexState U = solve_resolvent(lambda, F, gen);
  const double unorm = energy_norm(U, sys);
  const BoundaryTraces t = boundary_traces(lambda, U, F, gen);

  double vel = 0.0;
  double disp = 0.0;
  double slope = 0.0;
  for (int f = 0; f < 3; ++f) {
    vel += std::norm(t.vel0[f]);
    disp += std::norm(t.disp0[f]);
    slope += std::norm(t.slope0[f]);
  }
  const double uf = unorm * fnorm;
  const double ff = fnorm * fnorm;
  const double l2 = lambda * lambda;
  BoundaryEstimateRatios r;
  r.r0 = vel / uf;
  r.r1 = disp * l2 / (uf + ff);
  r.r2 = slope / (uf + uf / l2 + ff / l2);
  return r;
}

}  // namespace bresse
