#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "bresse/fem.hpp"

using namespace bresse;

namespace {

Eigen::MatrixXd dense(const SparseMat& a) { return Eigen::MatrixXd(a); }

// Exact stiffness energy of smooth fields by composite Gauss-Legendre (5 points).
double exact_form(const BresseParams& p, double (*phi)(double), double (*dphi)(double), double (*psi)(double),
                  double (*dpsi)(double), double (*w)(double), double (*dw)(double)) {
  static const double xg[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                               0.9061798459386640};
  static const double wg[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                               0.2369268850561891};
  const int cells = 400;
  const double h = p.L / cells;
  double s = 0.0;
  for (int c = 0; c < cells; ++c) {
    for (int k = 0; k < 5; ++k) {
      const double x = (c + 0.5) * h + 0.5 * h * xg[k];
      const double shear = dphi(x) + psi(x) + p.ell * w(x);
      const double axial = dw(x) - p.ell * phi(x);
      s += 0.5 * h * wg[k] * (p.kappa * shear * shear + p.b * dpsi(x) * dpsi(x) + p.k0 * axial * axial);
    }
  }
  return s;
}

double f_phi(double x) { return std::cos(std::numbers::pi * x / 2.0); }
double d_phi(double x) { return -std::numbers::pi / 2.0 * std::sin(std::numbers::pi * x / 2.0); }
double f_psi(double x) { return (1.0 - x) * std::exp(x); }
double d_psi(double x) { return -x * std::exp(x); }
double f_w(double x) { return std::sin(2.0 * std::numbers::pi * x); }
double d_w(double x) { return 2.0 * std::numbers::pi * std::cos(2.0 * std::numbers::pi * x); }

Eigen::VectorXd interpolate(std::size_t n) {
  Eigen::VectorXd u(3 * static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(n);
    u[dof(Field::phi, j, n)] = f_phi(x);
    u[dof(Field::psi, j, n)] = f_psi(x);
    u[dof(Field::w, j, n)] = f_w(x);
  }
  return u;
}

}  // namespace

TEST_CASE("grid") {
  Grid g = build_grid(1.0, 1);
  CHECK(g.nodes() == std::vector<double>{0.0, 1.0});
  CHECK(g.h() == 1.0);
  g = build_grid(1.0, 4);
  CHECK(g.h() == 0.25);
  CHECK(g.node_count() == 5);
  g = build_grid(2.0, 8);
  CHECK(g.h() == 0.25);
  CHECK(g.node(3) == 0.75);
  CHECK_THROWS_AS(build_grid(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(-1.0, 4), std::invalid_argument);
}

TEST_CASE("mass matrix") {
  BresseParams p = default_params();
  Grid g = build_grid(1.0, 1);
  const Eigen::MatrixXd m1 = dense(assemble_mass(p, g));
  REQUIRE(m1.rows() == 3);
  CHECK(m1(0, 0) == doctest::Approx(1.0 / 3.0));  // int_0^1 (1-x)^2

  g = build_grid(1.0, 10);
  const Eigen::MatrixXd mc = dense(assemble_mass(p, g, MassKind::consistent));
  const Eigen::MatrixXd ml = dense(assemble_mass(p, g, MassKind::lumped));
  CHECK((ml - Eigen::MatrixXd(ml.diagonal().asDiagonal())).norm() == 0.0);
  // Row sums match away from the clamped end, where the coupling to x = L is dropped.
  for (int f = 0; f < 3; ++f) {
    for (int j = 0; j < 9; ++j) CHECK(std::abs(mc.row(10 * f + j).sum() - ml(10 * f + j, 10 * f + j)) <= 1e-14);
    CHECK(ml(10 * f, 10 * f) == doctest::Approx(0.05));
    CHECK(ml(10 * f + 9, 10 * f + 9) == doctest::Approx(0.1));
  }
  CHECK(mc(0, 0) == doctest::Approx(0.1 / 3.0));
  CHECK(mc(1, 1) == doctest::Approx(4.0 * 0.1 / 6.0));
  CHECK(mc(0, 1) == doctest::Approx(0.1 / 6.0));

  BresseParams q = p;
  q.rho1 = 2.0;
  const Eigen::MatrixXd m2 = dense(assemble_mass(q, g));
  const Eigen::Index n = 10;
  CHECK((m2.block(0, 0, n, n) - 2.0 * mc.block(0, 0, n, n)).norm() <= 1e-14);
  CHECK((m2.block(n, n, n, n) - mc.block(n, n, n, n)).norm() == 0.0);
  CHECK((m2.block(2 * n, 2 * n, n, n) - 2.0 * mc.block(2 * n, 2 * n, n, n)).norm() <= 1e-14);
}

TEST_CASE("stiffness matrix") {
  BresseParams p = default_params();
  const Eigen::MatrixXd k1 = dense(assemble_stiffness(p, build_grid(1.0, 1)));
  // eta = 1 - x, eta' = -1 on the single element.
  CHECK(k1(0, 0) == doctest::Approx(1.0 + 0.25 / 3.0));  // kappa int eta'^2 + k0 ell^2 int eta^2
  CHECK(k1(1, 1) == doctest::Approx(1.0 + 1.0 / 3.0));   // b int eta'^2 + kappa int eta^2
  CHECK(k1(2, 2) == doctest::Approx(1.0 + 0.25 / 3.0));  // k0 int eta'^2 + kappa ell^2 int eta^2
  CHECK(k1(0, 1) == doctest::Approx(-0.5));              // kappa int eta' eta
  CHECK(k1(1, 2) == doctest::Approx(0.5 / 3.0));         // kappa ell int eta^2
  CHECK(std::abs(k1(0, 2)) <= 1e-15);                    // (k0 - kappa) ell / 2 = 0

  const Grid g = build_grid(1.0, 16);
  const Eigen::MatrixXd k = dense(assemble_stiffness(p, g));
  CHECK((k - k.transpose()).norm() == 0.0);

  p.ell = 0.0;
  const Eigen::MatrixXd k0 = dense(assemble_stiffness(p, g));
  CHECK(k0.block(32, 0, 16, 32).norm() == 0.0);
  CHECK(k0.block(0, 32, 32, 16).norm() == 0.0);
}

TEST_CASE("stiffness form is positive on random vectors (property)") {
  const FemSystem sys = build_system(default_params(), 20);
  std::mt19937_64 rng(8);
  std::normal_distribution<double> d;
  for (int t = 0; t < 300; ++t) {
    Eigen::VectorXd u(60);
    for (int i = 0; i < 60; ++i) u[i] = d(rng);
    if (t % 4 == 0) u.segment(20 * (t % 3), 20).setZero();
    CHECK(u.dot(sys.K * u) > 0.0);
  }
}

TEST_CASE("stiffness converges at second order on smooth fields") {
  const BresseParams p = default_params();
  const double exact = exact_form(p, f_phi, d_phi, f_psi, d_psi, f_w, d_w);
  std::vector<double> err;
  for (std::size_t n : {16, 32, 64}) {
    const FemSystem sys = build_system(p, n);
    const Eigen::VectorXd u = interpolate(n);
    err.push_back(std::abs(u.dot(sys.K * u) - exact));
  }
  CHECK(err[0] / err[1] > 3.5);
  CHECK(err[1] / err[2] > 3.5);
}

TEST_CASE("damping matrix") {
  BresseParams p = default_params();
  const Grid g = build_grid(1.0, 8);
  p.gamma1 = p.gamma2 = p.gamma3 = 0.0;
  CHECK(assemble_damping(p, g).nonZeros() == 0);

  p.gamma1 = 1.0;
  p.gamma2 = 2.0;
  p.gamma3 = 3.0;
  const Eigen::MatrixXd d = dense(assemble_damping(p, g));
  CHECK(d.trace() == 6.0);
  CHECK(Eigen::FullPivLU<Eigen::MatrixXd>(d).rank() == 3);
  CHECK(d(0, 0) == 1.0);
  CHECK(d(8, 8) == 2.0);
  CHECK(d(16, 16) == 3.0);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXd v(24);
    for (int i = 0; i < 24; ++i) v[i] = u(rng);
    const double form = v.dot(d * v);
    CHECK(form == doctest::Approx(-dissipation_rate(std::array<double, 3>{v[0], v[8], v[16]}, p)).epsilon(1e-14));
  }

  p.gamma2 = 0.0;
  CHECK(Eigen::FullPivLU<Eigen::MatrixXd>(dense(assemble_damping(p, g))).rank() == 2);
}

TEST_CASE("system invariants") {
  const FemSystem sys = build_system(default_params(), 12);
  CHECK(sys.M.rows() == 36);
  CHECK(sys.K.rows() == 36);
  CHECK(sys.D.rows() == 36);
  CHECK(sys.M_end.rows() == 3);
  CHECK(sys.M_end.cols() == 36);
  const Eigen::MatrixXd m = dense(sys.M);
  CHECK((m - m.transpose()).norm() == 0.0);
  CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff() > 0.0);
  CHECK_THROWS(build_system(default_params(), 0));
  BresseParams bad = default_params();
  bad.b = -1.0;
  CHECK_THROWS(build_system(bad, 4));
}

TEST_CASE("coercivity") {
  BresseParams p = default_params();
  const FemSystem sys = build_system(p, 16);
  const double kmin = check_coercivity(sys.K);
  CHECK(kmin > 0.0);
  // Independent dense eigen decomposition.
  const double ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(dense(sys.K)).eigenvalues().minCoeff();
  CHECK(kmin == doctest::Approx(ref).epsilon(1e-10));

  p.ell = 0.0;
  CHECK(check_coercivity(build_system(p, 16).K) > 0.0);

  std::vector<double> c;
  for (std::size_t n : {16, 32, 64}) c.push_back(coercivity_constant(build_system(default_params(), n)));
  for (double x : c) CHECK(x > 0.0);
  CHECK(std::abs(c[1] - c[0]) <= 0.05 * c[0]);
  CHECK(std::abs(c[2] - c[1]) <= 0.05 * c[1]);
}

TEST_CASE("field restriction") {
  BresseParams p = default_params();
  CHECK_THROWS_AS(restrict_to_field(build_system(p, 8), Field::w), std::invalid_argument);
  p.ell = 0.0;
  p.gamma3 = 0.7;
  const FemSystem sys = build_system(p, 8);
  const Pencil w = restrict_to_field(sys, Field::w);
  CHECK(w.M.rows() == 8);
  CHECK(Eigen::MatrixXd(w.D)(0, 0) == 0.7);
  CHECK((dense(w.K) - dense(sys.K).block(16, 16, 8, 8)).norm() == 0.0);

  const Eigen::VectorXd r = Eigen::VectorXd::LinSpaced(24, 1.0, 24.0);
  const auto nodal = to_nodal(r, 8);
  CHECK(nodal[0].size() == 9);
  CHECK(nodal[2][0] == 17.0);
  CHECK(nodal[1][8] == 0.0);
}
