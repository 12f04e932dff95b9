#pragma once

#include "aniso/anisotropy.hpp"
#include "aniso/hausdorff.hpp"
#include "aniso/radius.hpp"
#include "aniso/surface.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace aniso {

/// |(1/F) integral (gamma(-N) + H_gamma <X - x0, N>)|. Vanishes for closed
/// surfaces up to quadrature error.
double hsiung_minkowski_residual(const SampledSurface& s, const Vec& x0);

struct HkProducts {
  double l2 = 0.0;   // ||H_gamma||_2 ||gamma*(X - X0)||_2
  double inf = 0.0;  // ||H_gamma||_inf * radius
};

HkProducts hk_products(const SampledSurface& s, const RadiusSolution& sol);

/// Smallest eps with ||H_gamma||_p ||gamma*(X - X0)||_2 <= 1 + eps.
double pinching_epsilon(const SampledSurface& s, const RadiusSolution& sol, double p);

/// ||H_gamma||_2 * max |gamma*(X - X0) - 1/||H_gamma||_2|.
double radius_deviation(const SampledSurface& s, const RadiusSolution& sol);

/// ||H_gamma - ||H_gamma||_2||_r / ||H_gamma||_2 for r in [1, p). With
/// `absolute`, |H_gamma| replaces H_gamma inside the norm.
double mc_deviation(const SampledSurface& s, double r, double p, bool absolute = false);

struct Exponents {
  double beta = 0.0;
  double alpha = 0.0;
};

/// beta = n q / (2 (q - n)), alpha = 1 / (2 (1 + beta)); requires q > n.
Exponents exponents(int n, double q);

/// F(Sigma)^(1/n) ||S_gamma||_q with the Frobenius norm per node.
double sg_bound(const SampledSurface& s, double q);

/// ||g||_{p/(p-1)} - ||g||_1^(1-2/p) ||g||_2^(2/p) for g = gamma*(X - X0);
/// non-positive by Hoelder.
double holder_margin(const SampledSurface& s, const RadiusSolution& sol, double p);

/// Max over nodes of |H| - |S_gamma| / lambda (non-positive when the
/// pointwise bound holds).
double pointwise_bound_excess(const SampledSurface& s, double lambda);

struct ReportOptions {
  double p = 3.0;
  double q = 4.0;
  std::vector<double> r_values{1.0, 2.0};
  int resolution = 128;
  /// Recompute at half resolution and report differences as quadrature-error
  /// estimates.
  bool estimate_error = true;
  bool compute_hausdorff = true;
  int hausdorff_oversample = 4;
  std::optional<double> a_bound;
};

struct QuadratureEstimates {
  double hm_residual = 0.0;
  double hk_product_l2 = 0.0;
  double hk_product_inf = 0.0;
  double pinching_epsilon = 0.0;
  int coarse_resolution = 0;
};

struct VerificationReport {
  static constexpr int kSchemaVersion = 1;

  int n = 2;
  int resolution = 0;
  std::string gamma_family;
  std::string surface_kind;
  std::size_t node_count = 0;

  double surface_energy = 0.0;
  double volume = 0.0;
  double lambda = 0.0;
  Vec center_of_mass;
  Vec center;  // X0
  double radius = 0.0;
  bool radius_converged = false;
  double radius_gap = 0.0;
  double optimality_certificate = 0.0;

  double hm_residual = 0.0;
  double hk_product_l2 = 0.0;
  double hk_product_inf = 0.0;
  double h_gamma_l2 = 0.0;
  double h_gamma_inf = 0.0;
  double pinching_p = 0.0;
  double pinching_epsilon = 0.0;
  double radius_deviation = 0.0;
  std::map<double, double> mc_deviation;
  std::map<double, double> mc_deviation_abs;
  double q = 0.0;
  double sg_bound = 0.0;
  std::optional<double> a_bound;
  bool sg_bound_exceeds_a = false;
  double beta = 0.0;
  double alpha = 0.0;
  double holder_margin = 0.0;
  double pointwise_bound_excess = 0.0;
  std::optional<HausdorffResult> hausdorff;
  std::optional<QuadratureEstimates> error_estimates;
  /// Max |H_gamma - 1/scale| over nodes, only for unmodulated Wulff shapes.
  std::optional<double> wulff_curvature_error;
};

/// Every diagnostic for one (gamma, Sigma) pair. Deterministic: equal inputs
/// give bit-identical reports.
VerificationReport full_report(const AnisotropySpec& gamma, const SurfaceSpec& surface,
                               const ReportOptions& options);

}  // namespace aniso
