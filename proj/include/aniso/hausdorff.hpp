#pragma once

#include "aniso/anisotropy.hpp"
#include "aniso/surface.hpp"

namespace aniso {

struct HausdorffResult {
  double distance = 0.0;
  double forward = 0.0;   // sup over Sigma of the distance to the target
  double backward = 0.0;  // sup over the target of the distance to Sigma
  double sampling_h = 0.0;
  int resolution = 0;     // resolution of the dense resampling
};

/// Symmetric Hausdorff distance between two parametrized surfaces. Both are
/// resampled on make_grid(n, resolution); nearest neighbours come from a
/// uniform spatial hash and are refined by Gauss-Newton projection onto the
/// other surface's parametrization.
HausdorffResult hausdorff_between(const SurfaceSpec& a, const Anisotropy& gamma_a,
                                  const SurfaceSpec& b, const Anisotropy& gamma_b,
                                  int resolution);

/// Hausdorff distance between the sampled Sigma and scale * W_gamma + center,
/// resampled at `oversample` times the geometry resolution.
HausdorffResult hausdorff_distance(const SampledSurface& s, const Anisotropy& gamma, double scale,
                                   const Vec& center, int oversample = 4);

}  // namespace aniso
