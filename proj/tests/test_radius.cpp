#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aniso/radius.hpp"
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

double objective(const std::vector<Vec>& pts, const Anisotropy& g, const Vec& x0) {
  double worst = 0.0;
  for (const Vec& p : pts) worst = std::max(worst, g.dual_norm(Vec(p - x0)));
  return worst;
}

}  // namespace

TEST_CASE("isotropic minimax center is the smallest enclosing ball") {
  std::mt19937_64 rng(61);
  std::normal_distribution<double> gauss;
  for (int dim : {2, 3}) {
    const Anisotropy iso({dim - 1, Isotropic{}});
    for (int trial = 0; trial < 6; ++trial) {
      const int m = dim == 2 ? 64 : 24 + 8 * trial;
      std::vector<Vec> pts;
      for (int i = 0; i < m; ++i) {
        Vec p(dim);
        for (int k = 0; k < dim; ++k) p(k) = gauss(rng) * (k + 1);
        pts.push_back(p);
      }
      const oracle::Ball ball = oracle::smallest_enclosing_ball(pts);
      const RadiusSolution sol = minimax_center(pts, iso);
      CHECK(sol.converged);
      CHECK(sol.radius == doctest::Approx(ball.radius).epsilon(1e-7));
      CHECK((sol.center - ball.center).norm() < 1e-6 * ball.radius);
      CHECK(optimality_certificate(sol, iso) < 1e-6);
    }
  }
}

TEST_CASE("scaled and translated Wulff shapes are recovered") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const AnisotropySpec& spec : std::vector<AnisotropySpec>{
           {2, Ellipsoid{diag3(4, 1, 1)}}, {2, SmoothedLp{4.0, 0.5}}, {1, HarmonicPerturbation{1.0, 0.05, 3, 0}}}) {
    const Anisotropy g(spec);
    for (double s : {1.0, 3.0}) {
      Vec c(g.ambient_dim());
      for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = u(rng);
      const SampledSurface surf = sample_surface({WulffShape{s, c, {}}}, g, make_grid(g.n(), 32));
      const RadiusSolution sol = extrinsic_radius(surf, g);
      CAPTURE(spec.family_name());
      CHECK(sol.converged);
      CHECK(sol.radius == doctest::Approx(s).epsilon(1e-9));
      CHECK((sol.center - c).norm() < 1e-8 * s);
      // Every node of a Wulff shape is active.
      CHECK(sol.active_nodes.size() == surf.size());
    }
  }
}

TEST_CASE("anisotropic minimax center is a local minimum") {
  std::mt19937_64 rng(71);
  const Anisotropy g({2, Ellipsoid{oracle::random_spd(rng, 3, 9.0)}});
  std::normal_distribution<double> gauss;
  std::vector<Vec> pts;
  for (int i = 0; i < 40; ++i) pts.push_back(make_vec({gauss(rng), 2 * gauss(rng), 0.5 * gauss(rng)}));
  const RadiusSolution sol = minimax_center(pts, g);
  CHECK(sol.converged);
  CHECK(sol.radius == doctest::Approx(objective(pts, g, sol.center)).epsilon(1e-12));
  for (int k = 0; k < 200; ++k) {
    const Vec step = 1e-4 * oracle::random_unit(rng, 3);
    CHECK(objective(pts, g, Vec(sol.center + step)) >= sol.radius - 1e-10);
  }
  CHECK(optimality_certificate(sol, g) < 1e-6);
}

TEST_CASE("dual values and inclusion") {
  const Anisotropy g({2, Ellipsoid{diag3(1, 2, 3)}});
  const SampledSurface surf =
      sample_surface({EllipsoidSurface{make_vec({1.0, 2.0, 0.5}), make_vec({1, 0, 0})}}, g, make_grid(2, 16));
  const RadiusSolution sol = extrinsic_radius(surf, g);
  REQUIRE(sol.dual_values.size() == surf.size());
  const auto field = dual_norm_field(surf, g, sol.center);
  for (std::size_t i = 0; i < surf.size(); i += 5) {
    const double exact = g.dual_norm(Vec(surf.nodes[i].position - sol.center));
    CHECK(sol.dual_values[i] == doctest::Approx(exact).epsilon(1e-12));
    CHECK(field[i].value == doctest::Approx(exact).epsilon(1e-12));
  }
  CHECK(inclusion_check(surf, g, sol.center, sol.radius * (1 + 1e-9)));
  CHECK(!inclusion_check(surf, g, sol.center, sol.radius * (1 - 1e-6)));
}

TEST_CASE("minimum-norm point of a convex hull") {
  CHECK(hull_distance_to_origin(std::vector<Vec>{make_vec({1, 0}), make_vec({0, 1})}) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(hull_distance_to_origin(std::vector<Vec>{make_vec({1, 1, 0}), make_vec({-1, 1, 0}), make_vec({0, 1, 1})}) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(hull_distance_to_origin(std::vector<Vec>{make_vec({1, 0}), make_vec({-1, 0.5}), make_vec({0, -1})}) < 1e-14);
  CHECK(hull_distance_to_origin(std::vector<Vec>{make_vec({3, 4})}) == doctest::Approx(5.0));
  // Brute force over a fine sampling of the simplex.
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Vec> pts;
    for (int i = 0; i < 3; ++i) pts.push_back(make_vec({1.0, 0.0, 0.0}) + oracle::random_unit(rng, 3) * 0.8);
    double best = 1e300;
    const int steps = 400;
    for (int i = 0; i <= steps; ++i) {
      for (int j = 0; i + j <= steps; ++j) {
        const double a = double(i) / steps, b = double(j) / steps;
        best = std::min(best, (a * pts[0] + b * pts[1] + (1 - a - b) * pts[2]).norm());
      }
    }
    const double d = hull_distance_to_origin(pts);
    CHECK(d <= best + 1e-14);
    CHECK(d == doctest::Approx(best).epsilon(1e-4));
  }
}

TEST_CASE("degenerate inputs") {
  const Anisotropy iso({2, Isotropic{}});
  CHECK_THROWS_AS(minimax_center(std::vector<Vec>{}, iso), std::invalid_argument);
  const RadiusSolution one = minimax_center(std::vector<Vec>{make_vec({1, 2, 3})}, iso);
  CHECK(one.radius == doctest::Approx(0.0));
  CHECK((one.center - make_vec({1, 2, 3})).norm() < 1e-12);
  CHECK_THROWS_AS(minimax_center(std::vector<Vec>{make_vec({1, 2})}, iso), std::invalid_argument);
}
