#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aniso/serialization.hpp"
#include "aniso/verify.hpp"
#include "support/oracles.hpp"

using namespace aniso;

namespace {

Mat diag3(double a, double b, double c) {
  Mat q = Mat::Zero(3, 3);
  q(0, 0) = a;
  q(1, 1) = b;
  q(2, 2) = c;
  return q;
}

struct Fixture {
  Anisotropy gamma;
  SampledSurface surface;
  RadiusSolution radius;

  Fixture(const AnisotropySpec& g, const SurfaceSpec& s, int res)
      : gamma(g), surface(sample_surface(s, gamma, make_grid(g.n, res))), radius(extrinsic_radius(surface, gamma)) {}
};

// Weighted mean with gamma(-N) dA, written out independently of lp_norm.
double weighted_norm(const SampledSurface& s, const std::vector<double>& f, double p) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double w = s.nodes[i].gamma_normal * s.nodes[i].area_weight;
    num += std::pow(std::abs(f[i]), p) * w;
    den += w;
  }
  return std::pow(num / den, 1.0 / p);
}

}  // namespace

TEST_CASE("exponent formulas") {
  const Exponents a = exponents(2, 4);
  CHECK(a.beta == 2.0);
  CHECK(a.alpha == 1.0 / 6.0);
  const Exponents b = exponents(1, 2);
  CHECK(b.beta == 1.0);
  CHECK(b.alpha == 0.25);
  CHECK_THROWS_AS(exponents(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(exponents(2, 1.5), std::invalid_argument);
}

TEST_CASE("unit sphere with isotropic gamma is an equality case") {
  Fixture f({2, Isotropic{}}, {RoundSphere{1.0, {}}}, 32);
  const HkProducts hk = hk_products(f.surface, f.radius);
  CHECK(std::abs(hk.l2 - 1.0) < 1e-8);
  CHECK(std::abs(hk.inf - 1.0) < 1e-8);
  CHECK(std::abs(pinching_epsilon(f.surface, f.radius, 3.0)) < 1e-8);
  CHECK(radius_deviation(f.surface, f.radius) < 1e-8);
  CHECK(mc_deviation(f.surface, 1.0, 3.0) < 1e-12);
  CHECK(hsiung_minkowski_residual(f.surface, f.radius.center) < 1e-13);
}

TEST_CASE("Wulff shape with ellipsoid gamma") {
  Fixture f({2, Ellipsoid{diag3(4, 1, 1)}}, {WulffShape{1.0, {}, {}}}, 48);
  CHECK(hsiung_minkowski_residual(f.surface, f.radius.center) < 1e-6);
  const HkProducts hk = hk_products(f.surface, f.radius);
  CHECK(std::abs(hk.l2 - 1.0) < 1e-5);
  CHECK(std::abs(hk.inf - 1.0) < 1e-5);
  CHECK(std::isfinite(sg_bound(f.surface, 4.0)));
  CHECK(sg_bound(f.surface, 4.0) > 0.0);
}

TEST_CASE("inequality and diagnostics on a non-Wulff surface") {
  Fixture f({2, Ellipsoid{diag3(2, 1, 1.5)}}, {RadialGraph{1.0, {{2, 0, 0.15}, {3, 1, 0.05}}, {}}}, 32);
  const SampledSurface& s = f.surface;
  const auto h = s.aniso_mean_curvatures();
  const HkProducts hk = hk_products(s, f.radius);
  CHECK(hk.l2 > 1.0);
  CHECK(hk.inf >= hk.l2);
  CHECK(hk.l2 == doctest::Approx(weighted_norm(s, h, 2) * weighted_norm(s, f.radius.dual_values, 2)).epsilon(1e-12));
  const double eps = pinching_epsilon(s, f.radius, 3.0);
  CHECK(eps == doctest::Approx(weighted_norm(s, h, 3) * weighted_norm(s, f.radius.dual_values, 2) - 1.0).epsilon(1e-10));
  CHECK(eps >= hk.l2 - 1.0);
  CHECK(holder_margin(s, f.radius, 3.0) <= 1e-9);
  CHECK(holder_margin(s, f.radius, 5.0) <= 1e-9);
  CHECK(hsiung_minkowski_residual(s, f.radius.center) < 1e-8);
  // The residual does not depend on the base point.
  CHECK(hsiung_minkowski_residual(s, make_vec({0.3, 0.2, -1})) < 1e-8);
  CHECK(pointwise_bound_excess(s, lambda_min(f.gamma, make_grid(2, 32))) <= 1e-8);
  CHECK(mc_deviation(s, 1.0, 3.0) <= mc_deviation(s, 2.0, 3.0) + 1e-15);
  CHECK(mc_deviation(s, 1.0, 3.0, true) <= mc_deviation(s, 1.0, 3.0) + 1e-15);
  const double h2 = weighted_norm(s, h, 2);
  double worst = 0.0;
  for (double g : f.radius.dual_values) worst = std::max(worst, std::abs(g - 1.0 / h2));
  CHECK(radius_deviation(s, f.radius) == doctest::Approx(h2 * worst).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
  Fixture f({2, Isotropic{}}, {RoundSphere{1.0, {}}}, 16);
  CHECK_THROWS_AS(pinching_epsilon(f.surface, f.radius, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(mc_deviation(f.surface, 3.0, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(mc_deviation(f.surface, 0.5, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(holder_margin(f.surface, f.radius, 1.5), std::invalid_argument);
  RadiusSolution other = f.radius;
  other.dual_values.pop_back();
  CHECK_THROWS_AS(hk_products(f.surface, other), std::invalid_argument);
  ReportOptions opt;
  opt.resolution = 16;
  opt.q = 2.0;
  CHECK_THROWS_AS(full_report({2, Isotropic{}}, {RoundSphere{1.0, {}}}, opt), std::invalid_argument);
}

TEST_CASE("full report is deterministic and complete") {
  ReportOptions opt;
  opt.resolution = 24;
  opt.a_bound = 1.0;
  const AnisotropySpec g{2, HarmonicPerturbation{1.0, 0.1, 3, 1}};
  const SurfaceSpec s{WulffShape{2.0, make_vec({0.5, 0, 0}), {}}};
  const VerificationReport a = full_report(g, s, opt);
  const VerificationReport b = full_report(g, s, opt);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(a.radius == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(a.wulff_curvature_error.has_value());
  CHECK(*a.wulff_curvature_error < 1e-9);
  REQUIRE(a.hausdorff.has_value());
  CHECK(a.hausdorff->distance < 1e-8);
  CHECK(a.hausdorff->resolution == 96);
  REQUIRE(a.error_estimates.has_value());
  CHECK(a.error_estimates->coarse_resolution == 12);
  CHECK(a.sg_bound_exceeds_a);
  CHECK(a.mc_deviation.size() == 2);
  CHECK(a.beta == 2.0);
  CHECK(to_json(a)["schema_version"] == VerificationReport::kSchemaVersion);
}

TEST_CASE("Hausdorff distance against closed forms") {
  const Anisotropy iso({2, Isotropic{}});
  // Concentric spheres of radii 1 and 1.1.
  const HausdorffResult r = hausdorff_between({RoundSphere{1.0, {}}}, iso, {RoundSphere{1.1, {}}}, iso, 32);
  CHECK(r.distance == doctest::Approx(0.1).epsilon(1e-9));
  // Shifted unit spheres: the sup sits on the equator, which the grid only
  // approaches, so the sampled value is low by O(h^2) and improves with h.
  const SurfaceSpec shifted{RoundSphere{1.0, make_vec({0.05, 0, 0})}};
  const HausdorffResult t = hausdorff_between({RoundSphere{1.0, {}}}, iso, shifted, iso, 32);
  const HausdorffResult t2 = hausdorff_between({RoundSphere{1.0, {}}}, iso, shifted, iso, 64);
  CHECK(t.distance <= 0.05 + 1e-12);
  CHECK(t.distance == doctest::Approx(0.05).epsilon(3e-3));
  CHECK(0.05 - t2.distance < 0.3 * (0.05 - t.distance));
  // Spheroid with semi-axes (1, 1, 1.2) against the unit sphere: the poles.
  const HausdorffResult e =
      hausdorff_between({EllipsoidSurface{make_vec({1, 1, 1.2}), {}}}, iso, {RoundSphere{1.0, {}}}, iso, 32);
  CHECK(e.distance == doctest::Approx(0.2).epsilon(1e-3));
  CHECK(e.forward == doctest::Approx(e.distance));
}
