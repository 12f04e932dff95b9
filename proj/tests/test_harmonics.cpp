#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aniso/harmonics.hpp"
#include "aniso/sphere_grid.hpp"
#include "support/oracles.hpp"

#include <random>

using namespace aniso;

namespace {

double grid_inner(const SphereGrid& g, const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.weights[i] * a.value(g.nodes[i]) * b.value(g.nodes[i]);
  return s;
}

}  // namespace

TEST_CASE("spherical harmonics on S^2 are orthonormal up to degree 5") {
  const SphereGrid g = make_grid(2, 24);
  std::vector<std::pair<int, int>> lm;
  for (int l = 0; l <= 5; ++l) {
    for (int m = -l; m <= l; ++m) lm.emplace_back(l, m);
  }
  for (std::size_t i = 0; i < lm.size(); ++i) {
    const auto a = real_harmonic(2, lm[i].first, lm[i].second);
    for (std::size_t j = i; j < lm.size(); ++j) {
      const auto b = real_harmonic(2, lm[j].first, lm[j].second);
      CHECK(std::abs(grid_inner(g, a, b) - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("circular harmonics on S^1 are orthonormal") {
  const SphereGrid g = make_grid(1, 64);
  for (int l = 0; l <= 6; ++l) {
    for (int m : {1, -1}) {
      if (l == 0 && m < 0) continue;
      const auto a = real_harmonic(1, l, m);
      CHECK(std::abs(grid_inner(g, a, a) - 1.0) < 1e-12);
      const auto c = real_harmonic(1, l + 1, 1);
      CHECK(std::abs(grid_inner(g, a, c)) < 1e-12);
    }
  }
}

TEST_CASE("Y_20 matches its closed form") {
  const auto y = real_harmonic(2, 2, 0);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const Vec u = oracle::random_unit(rng, 3);
    const double expected = 0.25 * std::sqrt(5.0 / M_PI) * (3.0 * u(2) * u(2) - 1.0);
    CHECK(y.value(u) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("harmonic polynomials have zero Laplacian") {
  std::mt19937_64 rng(5);
  for (int l = 0; l <= 8; ++l) {
    for (int m = -l; m <= l; ++m) {
      const auto p = real_harmonic(2, l, m);
      const Vec x = 1.3 * oracle::random_unit(rng, 3);
      CHECK(std::abs(p.laplacian(x)) < 1e-9);
    }
  }
}

TEST_CASE("polynomial derivatives agree with finite differences") {
  std::mt19937_64 rng(7);
  for (int l : {1, 3, 6}) {
    for (int m : {0, 1, -2}) {
      if (std::abs(m) > l) continue;
      const auto p = real_harmonic(2, l, m);
      auto f = [&](const Vec& x) { return p.value(x); };
      const Vec x = oracle::random_unit(rng, 3) * 0.9;
      CHECK((p.gradient(x) - oracle::fd_gradient(f, x)).norm() < 1e-7);
      CHECK((p.hessian(x) - oracle::fd_hessian(f, x)).norm() < 1e-5);
    }
  }
}

TEST_CASE("homogeneous_jet matches finite differences of P(y)|y|^s") {
  const auto p = real_harmonic(2, 3, 2);
  std::mt19937_64 rng(11);
  for (double s : {-3.0, -2.0, 0.5}) {
    auto f = [&](const Vec& y) { return p.value(y) * std::pow(y.norm(), s); };
    const Vec y = 1.7 * oracle::random_unit(rng, 3);
    const ScalarJet j = homogeneous_jet(p, s, y);
    CHECK(j.value == doctest::Approx(f(y)).epsilon(1e-13));
    CHECK((j.gradient - oracle::fd_gradient(f, y)).norm() < 1e-7);
    CHECK((j.hessian - oracle::fd_hessian(f, y)).norm() < 1e-5);
  }
}

TEST_CASE("harmonic series extension is 0-homogeneous") {
  const HarmonicSeries series(2, 1.0, {{2, 0, 0.2}, {3, -1, 0.05}});
  std::mt19937_64 rng(13);
  for (int k = 0; k < 10; ++k) {
    const Vec u = oracle::random_unit(rng, 3);
    const ScalarJet a = series.jet(u);
    const ScalarJet b = series.jet(Vec(2.5 * u));
    CHECK(a.value == doctest::Approx(series.value(u)).epsilon(1e-14));
    CHECK(b.value == doctest::Approx(a.value).epsilon(1e-14));
    CHECK(std::abs(a.gradient.dot(u)) < 1e-13);
    CHECK((b.gradient * 2.5 - a.gradient).norm() < 1e-13);
  }
}

TEST_CASE("invalid harmonic requests are rejected") {
  CHECK_THROWS_AS(real_harmonic(2, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(real_harmonic(3, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(real_harmonic(2, -1, 0), std::invalid_argument);
}
