#include "bresse/sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace bresse {

namespace {

double bump(double x, double a, double b) {
  if (x <= a || x >= b) return 0.0;
  const double t = (x - a) / (b - a);
  return std::exp(4.0 - 1.0 / (t * (1.0 - t)));
}

}  // namespace

RealState smooth_initial_state(const Grid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> freq(0.0, 1.5);
  const auto n = static_cast<Eigen::Index>(grid.elements);
  const double len = grid.length;
  RealState s = RealState::zero(3 * n);
  for (int f = 0; f < 6; ++f) {
    const double a = amp(rng);
    const double c = amp(rng);
    const double k = freq(rng);
    Eigen::VectorXd& target = f < 3 ? s.u : s.v;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double x = grid.node(static_cast<std::size_t>(j));
      target[(f % 3) * n + j] =
          a * bump(x, 0.05 * len, 0.95 * len) * (1.0 + 0.5 * c * std::cos(std::numbers::pi * k * x / len));
    }
  }
  return s;
}

RealState smooth_load(const Grid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> freq(0.5, 2.5);
  const auto n = static_cast<Eigen::Index>(grid.elements);
  const double len = grid.length;
  RealState s = RealState::zero(3 * n);
  for (int f = 0; f < 6; ++f) {
    const double a = coef(rng);
    const double b = coef(rng);
    const double c = freq(rng);
    Eigen::VectorXd& target = f < 3 ? s.u : s.v;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double x = grid.node(static_cast<std::size_t>(j));
      target[(f % 3) * n + j] = (len - x) * (a + b * std::cos(std::numbers::pi * c * x / len));
    }
  }
  return s;
}

RealState random_state(Eigen::Index dofs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  RealState s = RealState::zero(dofs);
  for (Eigen::Index i = 0; i < dofs; ++i) s.u[i] = dist(rng);
  for (Eigen::Index i = 0; i < dofs; ++i) s.v[i] = dist(rng);
  return s;
}

ComplexState random_complex_state(Eigen::Index dofs, std::uint64_t seed) {
  const RealState re = random_state(dofs, seed);
  const RealState im = random_state(dofs, seed ^ 0x9e3779b97f4a7c15ULL);
  ComplexState s;
  s.u = re.u.cast<std::complex<double>>() + std::complex<double>(0.0, 1.0) * im.u.cast<std::complex<double>>();
  s.v = re.v.cast<std::complex<double>>() + std::complex<double>(0.0, 1.0) * im.v.cast<std::complex<double>>();
  return s;
}

}  // namespace bresse
