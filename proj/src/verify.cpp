#include "aniso/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace aniso {

namespace {

void require_solution(const SampledSurface& s, const RadiusSolution& sol) {
  if (sol.dual_values.size() != s.size()) {
    throw std::invalid_argument("radius solution was computed for a different surface");
  }
}

}  // namespace

double hsiung_minkowski_residual(const SampledSurface& s, const Vec& x0) {
  double sum = 0.0;
  double energy = 0.0;
  for (const auto& node : s.nodes) {
    const double integrand =
        node.gamma_normal + node.aniso_mean_curvature * (node.position - x0).dot(node.normal);
    sum += integrand * node.area_weight;
    energy += node.gamma_normal * node.area_weight;
  }
  return std::abs(sum / energy);
}

HkProducts hk_products(const SampledSurface& s, const RadiusSolution& sol) {
  require_solution(s, sol);
  const std::vector<double> h = s.aniso_mean_curvatures();
  HkProducts out;
  out.l2 = lp_norm(s, h, 2.0) * lp_norm(s, sol.dual_values, 2.0);
  out.inf = lp_norm(s, h, kInfinityNorm) * sol.radius;
  return out;
}

double pinching_epsilon(const SampledSurface& s, const RadiusSolution& sol, double p) {
  if (!(p > 2.0)) throw std::invalid_argument("pinching_epsilon: p must be > 2");
  require_solution(s, sol);
  const std::vector<double> h = s.aniso_mean_curvatures();
  return lp_norm(s, h, p) * lp_norm(s, sol.dual_values, 2.0) - 1.0;
}

double radius_deviation(const SampledSurface& s, const RadiusSolution& sol) {
  require_solution(s, sol);
  const double h2 = lp_norm(s, s.aniso_mean_curvatures(), 2.0);
  double worst = 0.0;
  for (double g : sol.dual_values) worst = std::max(worst, std::abs(g - 1.0 / h2));
  return h2 * worst;
}

double mc_deviation(const SampledSurface& s, double r, double p, bool absolute) {
  if (!(r >= 1.0 && r < p)) {
    std::ostringstream msg;
    msg << "mc_deviation: r = " << r << " must lie in [1, p = " << p << ")";
    throw std::invalid_argument(msg.str());
  }
  const std::vector<double> h = s.aniso_mean_curvatures();
  const double h2 = lp_norm(s, h, 2.0);
  std::vector<double> f(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) f[i] = (absolute ? std::abs(h[i]) : h[i]) - h2;
  return lp_norm(s, f, r) / h2;
}

Exponents exponents(int n, double q) {
  if (n < 1) throw std::invalid_argument("exponents: n must be >= 1");
  if (!(q > n)) {
    std::ostringstream msg;
    msg << "exponents: q = " << q << " must exceed n = " << n;
    throw std::invalid_argument(msg.str());
  }
  Exponents e;
  e.beta = n * q / (2.0 * (q - n));
  e.alpha = 1.0 / (2.0 * (1.0 + e.beta));
  return e;
}

double sg_bound(const SampledSurface& s, double q) {
  std::vector<double> f;
  f.reserve(s.size());
  for (const auto& node : s.nodes) f.push_back(node.s_gamma_frobenius);
  return std::pow(surface_energy(s), 1.0 / s.n) * lp_norm(s, f, q);
}

double holder_margin(const SampledSurface& s, const RadiusSolution& sol, double p) {
  if (!(p > 2.0)) throw std::invalid_argument("holder_margin: p must be > 2");
  require_solution(s, sol);
  const auto& g = sol.dual_values;
  const double lhs = lp_norm(s, g, p / (p - 1.0));
  const double rhs = std::pow(lp_norm(s, g, 1.0), 1.0 - 2.0 / p) * std::pow(lp_norm(s, g, 2.0), 2.0 / p);
  return lhs - rhs;
}

double pointwise_bound_excess(const SampledSurface& s, double lambda) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& node : s.nodes) {
    worst = std::max(worst, std::abs(node.mean_curvature) - node.s_gamma_frobenius / lambda);
  }
  return worst;
}

namespace {

struct Core {
  SampledSurface surface;
  RadiusSolution radius;
  double hm_residual = 0.0;
  HkProducts hk;
  double epsilon = 0.0;
};

Core compute_core(const Anisotropy& gamma, const SurfaceSpec& spec, int resolution, double p) {
  Core c;
  const SphereGrid grid = make_grid(gamma.n(), resolution);
  c.surface = sample_surface(spec, gamma, grid);
  c.radius = extrinsic_radius(c.surface, gamma);
  c.hm_residual = hsiung_minkowski_residual(c.surface, c.radius.center);
  c.hk = hk_products(c.surface, c.radius);
  c.epsilon = pinching_epsilon(c.surface, c.radius, p);
  return c;
}

}  // namespace

VerificationReport full_report(const AnisotropySpec& gamma_spec, const SurfaceSpec& surface,
                               const ReportOptions& options) {
  const Anisotropy gamma(gamma_spec);
  const int n = gamma.n();
  if (!(options.p > 2.0)) throw std::invalid_argument("full_report: p must be > 2");
  if (!(options.q > n)) throw std::invalid_argument("full_report: q must exceed n");
  for (double r : options.r_values) {
    if (!(r >= 1.0 && r < options.p)) throw std::invalid_argument("full_report: r must lie in [1, p)");
  }

  VerificationReport rep;
  rep.n = n;
  rep.resolution = options.resolution;
  rep.gamma_family = gamma_spec.family_name();
  rep.surface_kind = surface.kind_name();

  const SphereGrid grid = make_grid(n, options.resolution);
  rep.lambda = lambda_min(gamma, grid);

  Core core = compute_core(gamma, surface, options.resolution, options.p);
  const SampledSurface& s = core.surface;
  const RadiusSolution& sol = core.radius;

  rep.node_count = s.size();
  rep.surface_energy = surface_energy(s);
  rep.volume = surface_volume(s);
  rep.center_of_mass = center_of_mass(s);
  rep.center = sol.center;
  rep.radius = sol.radius;
  rep.radius_converged = sol.converged;
  rep.radius_gap = sol.final_step;
  rep.optimality_certificate = optimality_certificate(sol, gamma);

  const std::vector<double> h = s.aniso_mean_curvatures();
  rep.h_gamma_l2 = lp_norm(s, h, 2.0);
  rep.h_gamma_inf = lp_norm(s, h, kInfinityNorm);
  rep.hm_residual = core.hm_residual;
  rep.hk_product_l2 = core.hk.l2;
  rep.hk_product_inf = core.hk.inf;
  rep.pinching_p = options.p;
  rep.pinching_epsilon = core.epsilon;
  rep.radius_deviation = radius_deviation(s, sol);
  for (double r : options.r_values) {
    rep.mc_deviation[r] = mc_deviation(s, r, options.p, false);
    rep.mc_deviation_abs[r] = mc_deviation(s, r, options.p, true);
  }
  rep.q = options.q;
  rep.sg_bound = sg_bound(s, options.q);
  rep.a_bound = options.a_bound;
  rep.sg_bound_exceeds_a = options.a_bound && rep.sg_bound > *options.a_bound;
  const Exponents e = exponents(n, options.q);
  rep.beta = e.beta;
  rep.alpha = e.alpha;
  rep.holder_margin = holder_margin(s, sol, options.p);
  rep.pointwise_bound_excess = pointwise_bound_excess(s, rep.lambda);

  if (const auto* w = std::get_if<WulffShape>(&surface.kind); w && w->modulation.empty()) {
    double worst = 0.0;
    for (double v : h) worst = std::max(worst, std::abs(v - 1.0 / w->scale));
    rep.wulff_curvature_error = worst;
  }

  if (options.compute_hausdorff) {
    rep.hausdorff = hausdorff_distance(s, gamma, 1.0 / rep.h_gamma_l2, sol.center,
                                       options.hausdorff_oversample);
  }

  const int coarse = options.resolution / 2;
  if (options.estimate_error && coarse >= 8) {
    const Core c = compute_core(gamma, surface, coarse, options.p);
    QuadratureEstimates q;
    q.coarse_resolution = coarse;
    q.hm_residual = std::abs(c.hm_residual - core.hm_residual);
    q.hk_product_l2 = std::abs(c.hk.l2 - core.hk.l2);
    q.hk_product_inf = std::abs(c.hk.inf - core.hk.inf);
    q.pinching_epsilon = std::abs(c.epsilon - core.epsilon);
    rep.error_estimates = q;
  }
  return rep;
}

}  // namespace aniso
