#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aniso/anisotropy.hpp"
#include "support/oracles.hpp"

#include <random>

using namespace aniso;

namespace {

Mat diag3(double a, double b, double c) {
  Mat q = Mat::Zero(3, 3);
  q(0, 0) = a;
  q(1, 1) = b;
  q(2, 2) = c;
  return q;
}

std::vector<AnisotropySpec> families() {
  return {
      {2, Isotropic{}},
      {2, Ellipsoid{diag3(4, 1, 1)}},
      {2, SmoothedLp{4.0, 0.5}},
      {2, SmoothedLp{4.0, 0.05}},
      {2, HarmonicPerturbation{1.0, 0.1, 3, 1}},
      {1, Ellipsoid{Mat(Eigen::Matrix2d{{2.0, 0.3}, {0.3, 1.0}})}},
      {1, HarmonicPerturbation{1.0, 0.05, 4, -1}},
  };
}

}  // namespace

TEST_CASE("closed-form values") {
  const Anisotropy iso({2, Isotropic{}});
  CHECK(iso.value(make_vec({3, 4, 0})) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(iso.dual_norm(make_vec({3, 4, 0})) == doctest::Approx(5.0).epsilon(1e-12));

  const Anisotropy ell({2, Ellipsoid{diag3(4, 1, 1)}});
  CHECK(ell.value(make_vec({1, 0, 0})) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(ell.dual_norm(make_vec({1, 0, 0})) == doctest::Approx(0.5).epsilon(1e-12));

  const Anisotropy hp({2, HarmonicPerturbation{1.5, 0.2, 2, 0}});
  const double y20 = 0.25 * std::sqrt(5.0 / M_PI) * 2.0;
  CHECK(hp.value(make_vec({0, 0, 2})) == doctest::Approx(2.0 * (1.5 + 0.2 * y20)).epsilon(1e-14));
}

TEST_CASE("gradient and Hessian match finite differences for every family") {
  std::mt19937_64 rng(17);
  for (const auto& spec : families()) {
    const Anisotropy g(spec);
    auto f = [&](const Vec& x) { return g.value(x); };
    for (int k = 0; k < 10; ++k) {
      const Vec x = (0.5 + k * 0.2) * oracle::random_unit(rng, g.ambient_dim());
      CAPTURE(spec.family_name());
      CHECK((g.gradient(x) - oracle::fd_gradient(f, x)).norm() < 1e-7);
      CHECK((g.hessian(x) - oracle::fd_hessian(f, x)).norm() < 2e-5);
    }
  }
}

TEST_CASE("extension is 1-homogeneous") {
  std::mt19937_64 rng(19);
  for (const auto& spec : families()) {
    const Anisotropy g(spec);
    const Vec x = oracle::random_unit(rng, g.ambient_dim());
    CHECK(g.value(Vec(3.0 * x)) == doctest::Approx(3.0 * g.value(x)).epsilon(1e-14));
    CHECK(g.gradient(x).dot(x) == doctest::Approx(g.value(x)).epsilon(1e-13));
    CHECK((g.hessian(x) * x).norm() < 1e-12);
  }
}

TEST_CASE("third derivative matches differences of the analytic Hessian") {
  std::mt19937_64 rng(23);
  for (const auto& spec : families()) {
    const Anisotropy g(spec);
    const int d = g.ambient_dim();
    const Vec x = oracle::random_unit(rng, d);
    const Vec a = oracle::random_unit(rng, d);
    const double h = 1e-3;
    const Mat reference = (g.hessian(x + h * a) - g.hessian(x - h * a)) / (2 * h);
    CHECK((g.third_derivative(x, a) - reference).norm() < 1e-4);
    // Isotropic closed form: D^3|x|[a] at unit x.
    if (spec.family_name() == "isotropic") {
      const Mat I = Mat::Identity(d, d);
      const Mat exact = -(x.dot(a) * I + a * x.transpose() + x * a.transpose()) +
                        3.0 * x.dot(a) * x * x.transpose();
      CHECK((g.third_derivative(x, a) - exact).norm() < 1e-10);
    }
  }
}

TEST_CASE("A_gamma equals the intrinsic spherical Hessian plus gamma") {
  std::mt19937_64 rng(29);
  for (const auto& spec : families()) {
    const Anisotropy g(spec);
    auto f = [&](const Vec& x) { return g.value(x); };
    for (int k = 0; k < 8; ++k) {
      const Vec nu = oracle::random_unit(rng, g.ambient_dim());
      const TangentOperator op = g.a_gamma(nu);
      CHECK((op.basis.transpose() * nu).norm() < 1e-14);
      CHECK((op.basis.transpose() * op.basis - Mat::Identity(g.n(), g.n())).norm() < 1e-14);
      const Mat reference = oracle::intrinsic_a_gamma(f, nu, op.basis);
      CAPTURE(spec.family_name());
      CHECK((op.matrix - reference).norm() < 1e-6);
    }
  }
  const Anisotropy iso({2, Isotropic{}});
  CHECK_THROWS_AS(iso.a_gamma(make_vec({1, 1, 0})), std::invalid_argument);
}

TEST_CASE("isotropic A_gamma is the identity") {
  const Anisotropy iso({2, Isotropic{}});
  std::mt19937_64 rng(31);
  for (int k = 0; k < 5; ++k) {
    const TangentOperator op = iso.a_gamma(oracle::random_unit(rng, 3));
    CHECK((op.matrix - Mat::Identity(2, 2)).norm() < 1e-14);
  }
}

TEST_CASE("ellipsoid dual norm equals sqrt(x^T Q^-1 x)") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 5; ++trial) {
    const Mat Q = oracle::random_spd(rng, 3, 16.0);
    const Anisotropy g({2, Ellipsoid{Q}});
    const Mat Qi = Q.inverse();
    for (int k = 0; k < 40; ++k) {
      const Vec x = (0.1 + k * 0.3) * oracle::random_unit(rng, 3);
      const double exact = std::sqrt(x.dot(Qi * x));
      const DualNormResult r = g.dual_norm_solve(x);
      CHECK(r.converged);
      CHECK(!r.multiple_maximizers);
      CHECK(r.value == doctest::Approx(exact).epsilon(1e-12));
      // Gradient of the closed form.
      CHECK((r.gradient - Qi * x / exact).norm() < 1e-9);
    }
  }
}

TEST_CASE("dual norm agrees with brute-force maximization") {
  std::mt19937_64 rng(41);
  for (const auto& spec : families()) {
    const Anisotropy g(spec);
    auto f = [&](const Vec& x) { return g.value(x); };
    const auto nodes = oracle::fibonacci_sphere(g.n(), g.n() == 2 ? 100000 : 20000);
    for (int k = 0; k < 10; ++k) {
      const Vec x = 2.0 * oracle::random_unit(rng, g.ambient_dim());
      const double brute = oracle::brute_dual_norm(f, x, nodes);
      const double value = g.dual_norm(x);
      CAPTURE(spec.family_name());
      CHECK(value >= brute * (1 - 1e-12));
      CHECK(value == doctest::Approx(brute).epsilon(1e-4));
    }
  }
}

TEST_CASE("warm-started dual norm agrees with the seeded solve") {
  std::mt19937_64 rng(43);
  const Anisotropy g({2, HarmonicPerturbation{1.0, 0.1, 3, 1}});
  for (int k = 0; k < 50; ++k) {
    const Vec x = oracle::random_unit(rng, 3);
    const Vec seed = oracle::random_unit(rng, 3);
    CHECK(g.dual_norm_from(x, seed).value == doctest::Approx(g.dual_norm(x)).epsilon(1e-12));
  }
}

TEST_CASE("dual norm is 1-homogeneous and sub-additive") {
  std::mt19937_64 rng(47);
  const Anisotropy g({2, SmoothedLp{4.0, 0.5}});
  for (int k = 0; k < 20; ++k) {
    const Vec x = oracle::random_unit(rng, 3);
    const Vec y = oracle::random_unit(rng, 3);
    CHECK(g.dual_norm(Vec(2.5 * x)) == doctest::Approx(2.5 * g.dual_norm(x)).epsilon(1e-12));
    CHECK(g.dual_norm(Vec(x + y)) <= g.dual_norm(x) + g.dual_norm(y) + 1e-12);
  }
}

TEST_CASE("Fenchel gap is non-negative and vanishes on the Wulff map") {
  std::mt19937_64 rng(53);
  for (const auto& spec : families()) {
    const Anisotropy g(spec);
    const int d = g.ambient_dim();
    for (int k = 0; k < 50; ++k) {
      const Vec x = 3.0 * oracle::random_unit(rng, d);
      const Vec y = 0.5 * oracle::random_unit(rng, d);
      CHECK(g.fenchel_gap(x, y) >= -1e-12);
      const Vec nu = oracle::random_unit(rng, d);
      const Vec xi = g.wulff_point(nu);
      CHECK(std::abs(g.fenchel_gap(xi, nu)) < 1e-10);
      CHECK(g.dual_norm(xi) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("lambda matches a dense eigenvalue sweep") {
  for (const auto& spec : families()) {
    const Anisotropy g(spec);
    auto f = [&](const Vec& x) { return g.value(x); };
    const double lambda = lambda_min(g, make_grid(g.n(), 32));
    const double dense = oracle::dense_min_eigenvalue(f, g.n(), g.n() == 2 ? 20000 : 4000);
    CAPTURE(spec.family_name());
    CHECK(lambda <= dense + 1e-6);
    CHECK(lambda == doctest::Approx(dense).epsilon(1e-3));
  }
  CHECK(lambda_min(Anisotropy({2, Isotropic{}}), make_grid(2, 16)) == doctest::Approx(1.0).epsilon(1e-14));
  // gamma = sqrt(x^T Q x): A_gamma has smallest eigenvalue min_i q_i / sqrt(max q).
  CHECK(lambda_min(Anisotropy({2, Ellipsoid{diag3(4, 1, 1)}}), make_grid(2, 32)) ==
        doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("convexity failure is reported with a witness") {
  const Anisotropy bad({2, HarmonicPerturbation{1.0, 1.0, 4, 0}});
  const SphereGrid grid = make_grid(2, 32);
  const ConvexityReport report = check_convexity(bad, grid);
  CHECK(!report.convex());
  CHECK(min_a_gamma_eigenvalue(bad, report.witness) == doctest::Approx(report.min_eigenvalue));
  CHECK_THROWS_AS(lambda_min(bad, grid), ConvexityError);

  const Anisotropy good({2, HarmonicPerturbation{1.0, 0.05, 4, 0}});
  CHECK(check_convexity(good, grid).convex());
}

TEST_CASE("invalid anisotropy parameters are rejected") {
  CHECK_THROWS_AS(Anisotropy({3, Isotropic{}}), std::invalid_argument);
  CHECK_THROWS_AS(Anisotropy({2, Ellipsoid{diag3(1, -1, 1)}}), std::invalid_argument);
  CHECK_THROWS_AS(Anisotropy({2, Ellipsoid{Mat::Identity(2, 2)}}), std::invalid_argument);
  CHECK_THROWS_AS(Anisotropy({2, SmoothedLp{1.5, 0.1}}), std::invalid_argument);
  CHECK_THROWS_AS(Anisotropy({2, HarmonicPerturbation{0.1, 1.0, 2, 0}}), std::invalid_argument);
  const Anisotropy iso({2, Isotropic{}});
  CHECK_THROWS_AS(iso.value(Vec::Zero(3)), std::domain_error);
  CHECK_THROWS_AS(iso.value(Vec::Zero(2)), std::invalid_argument);
}
