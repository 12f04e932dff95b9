#pragma once

#include "aniso/anisotropy.hpp"
#include "aniso/geometry.hpp"
#include "aniso/surface.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace aniso {

struct RadiusOptions {
  /// Stop once the certified objective gap is below tolerance * diameter.
  double tolerance = 1e-12;
  /// Budget of cutting-plane iterations across all exchange rounds.
  int max_iterations = 10000;
  /// Points whose gamma*(X - X0) is within active_tolerance * radius of the
  /// max are reported active.
  double active_tolerance = 1e-7;
  /// Size of the initial working set before exchange rounds add violators.
  std::size_t working_set = 512;
};

struct RadiusSolution {
  Vec center;
  double radius = 0.0;
  std::vector<std::size_t> active_nodes;
  int iterations = 0;
  /// Certified gap f(center) - min f at termination.
  double final_step = 0.0;
  bool converged = false;
  /// gamma*(X_p - center) and its maximizing direction, per point.
  std::vector<double> dual_values;
  std::vector<Vec> dual_directions;
};

/// Minimizes x0 -> max_p gamma*(points[p] - x0). `seeds`, when given, are
/// per-point starting directions for the dual-norm ascent.
RadiusSolution minimax_center(std::span<const Vec> points, const Anisotropy& gamma,
                              const RadiusOptions& options = {},
                              std::span<const Vec> seeds = {});

/// Anisotropic extrinsic radius of a sampled surface and its center X0.
RadiusSolution extrinsic_radius(const SampledSurface& s, const Anisotropy& gamma,
                                const RadiusOptions& options = {});

/// gamma*(X_p - x0) for every node, seeded with the outward normals.
std::vector<DualNormResult> dual_norm_field(const SampledSurface& s, const Anisotropy& gamma,
                                            const Vec& x0);

/// True iff max_p gamma*(X_p - x0) < scale.
bool inclusion_check(const SampledSurface& s, const Anisotropy& gamma, const Vec& x0,
                     double scale);

/// Distance from the origin to the convex hull of `points` (Wolfe's
/// minimum-norm-point algorithm).
double hull_distance_to_origin(std::span<const Vec> points);

/// Distance from 0 to the convex hull of the objective subgradients
/// -grad gamma*(X_p - X0) over the active nodes of `solution`.
double optimality_certificate(const RadiusSolution& solution, const Anisotropy& gamma);

}  // namespace aniso
