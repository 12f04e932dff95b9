#pragma once

#include "aniso/anisotropy.hpp"
#include "aniso/geometry.hpp"
#include "aniso/harmonics.hpp"
#include "aniso/sphere_grid.hpp"

#include <array>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <variant>
#include <vector>

namespace aniso {

// ---------------------------------------------------------------------------
// Closed hypersurfaces parametrized over S^n. A center left empty means the
// origin.
// ---------------------------------------------------------------------------

/// X(u) = center + scale * (1 + sum_k c_k Y_k(u)) * xi(u). With no
/// modulation terms this is the Wulff shape of radius `scale`.
struct WulffShape {
  double scale = 1.0;
  Vec center;
  std::vector<HarmonicTerm> modulation;
};

struct RoundSphere {
  double radius = 1.0;
  Vec center;
};

/// X(u) = center + diag(semi_axes) u.
struct EllipsoidSurface {
  Vec semi_axes;
  Vec center;
};

/// X(u) = center + r(u) u, r = base_radius + sum_k c_k Y_k(u).
struct RadialGraph {
  double base_radius = 1.0;
  std::vector<HarmonicTerm> terms;
  Vec center;
};

struct SurfaceSpec {
  std::variant<WulffShape, RoundSphere, EllipsoidSurface, RadialGraph> kind;

  std::string kind_name() const;
  /// Center of the parametrization (origin when unset).
  Vec center(int ambient_dim) const;
};

/// Position and chart derivatives at a parameter u. The chart is
/// s -> X((u + sum_i s_i e_i) / |...|) for the orthonormal tangent frame e_i
/// of the sphere at u.
struct ChartJet {
  Vec position;
  Mat tangents;                           // (n+1) x n
  std::array<std::array<Vec, 2>, 2> second;  // [i][j], symmetric
};

/// Analytic parametrization of a SurfaceSpec. Wulff-type surfaces evaluate
/// through `gamma`, which must outlive the parametrization.
class Parametrization {
 public:
  Parametrization(const SurfaceSpec& spec, const Anisotropy& gamma);

  int n() const { return n_; }
  Vec position(const Vec& u) const;
  ChartJet jet(const Vec& u, const Mat& frame, bool second_derivatives = true) const;

 private:
  SurfaceSpec spec_;
  const Anisotropy* gamma_;
  int n_;
  Vec center_;
  HarmonicSeries series_;
};

struct SurfaceNode {
  Vec parameter;  // u on S^n
  Vec position;
  Vec normal;     // inward unit normal N
  double area_weight = 0.0;
  TangentOperator shape;        // S, with S v = grad_v N
  TangentOperator aniso_shape;  // S_gamma = A_gamma(-N) o S
  double mean_curvature = 0.0;        // H = -(1/n) tr S
  double aniso_mean_curvature = 0.0;  // H_gamma = -(1/n) tr S_gamma
  double gamma_normal = 0.0;          // gamma(-N)
  double s_gamma_frobenius = 0.0;     // |S_gamma|
};

/// Per-node differential geometry of a sampled closed hypersurface.
/// Immutable after construction.
struct SampledSurface {
  int n = 2;
  int resolution = 0;
  SurfaceSpec spec;
  AnisotropySpec gamma_spec;
  std::vector<SurfaceNode> nodes;

  std::size_t size() const { return nodes.size(); }
  std::vector<Vec> positions() const;
  std::vector<double> aniso_mean_curvatures() const;
};

/// Samples `spec` on `grid` from exact parametrization derivatives. The
/// normal points inward and gamma, A_gamma are evaluated at the outward
/// normal -N, so the sphere has H = H_gamma = 1 and R W_gamma has
/// H_gamma = 1/R. Throws std::domain_error naming the node on a degenerate
/// metric or where the surface is not star-shaped about its center.
SampledSurface sample_surface(const SurfaceSpec& spec, const Anisotropy& gamma,
                              const SphereGrid& grid);

/// F(Sigma) = integral of gamma(-N).
double surface_energy(const SampledSurface& s);

inline constexpr double kInfinityNorm = std::numeric_limits<double>::infinity();

/// ((1/F) integral |f|^p gamma(-N))^(1/p); p = infinity gives max |f|.
double lp_norm(const SampledSurface& s, std::span<const double> f, double p);

/// (1/Vol) integral X, unweighted by gamma.
Vec center_of_mass(const SampledSurface& s);

/// Total area Vol(Sigma).
double surface_volume(const SampledSurface& s);

/// One CSV row per node: position, normal, H, H_gamma, |S_gamma|, area weight.
void write_nodes_csv(const SampledSurface& s, std::ostream& out);

/// Integral of f against the area measure (no gamma weight).
double integrate(const SampledSurface& s, std::span<const double> f);

}  // namespace aniso
