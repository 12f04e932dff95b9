#include "aniso/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace aniso {

namespace {

struct Cloud {
  std::vector<Vec> positions;
  std::vector<Vec> parameters;
};

Cloud sample_cloud(const Parametrization& param, const SphereGrid& grid) {
  Cloud c;
  c.positions.reserve(grid.size());
  c.parameters = grid.nodes;
  for (const Vec& u : grid.nodes) c.positions.push_back(param.position(u));
  return c;
}

// Largest distance between grid-adjacent samples.
double sampling_spacing(const Cloud& c, const SphereGrid& grid) {
  double h = 0.0;
  if (grid.n == 1) {
    const std::size_t m = c.positions.size();
    for (std::size_t i = 0; i < m; ++i) {
      h = std::max(h, (c.positions[i] - c.positions[(i + 1) % m]).norm());
    }
    return h;
  }
  const int rows = grid.resolution;
  const int cols = 2 * grid.resolution;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const Vec& p = c.positions[i * cols + j];
      h = std::max(h, (p - c.positions[i * cols + (j + 1) % cols]).norm());
      if (i + 1 < rows) h = std::max(h, (p - c.positions[(i + 1) * cols + j]).norm());
    }
  }
  return h;
}

class SpatialHash {
 public:
  SpatialHash(const std::vector<Vec>& points, double cell) : points_(points), cell_(cell) {
    for (std::size_t i = 0; i < points.size(); ++i) buckets_[key(coords(points[i]))].push_back(i);
  }

  std::size_t nearest(const Vec& q) const {
    const auto c = coords(q);
    const int dim = static_cast<int>(q.size());
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    for (int ring = 0; ring < 1 << 20; ++ring) {
      visit_shell(c, ring, dim, [&](const std::array<std::int64_t, 3>& cell) {
        const auto it = buckets_.find(key(cell));
        if (it == buckets_.end()) return;
        for (std::size_t i : it->second) {
          const double d = (points_[i] - q).squaredNorm();
          if (d < best || (d == best && i < best_index)) {
            best = d;
            best_index = i;
          }
        }
      });
      // Everything outside the searched cube is at least ring * cell away.
      if (std::isfinite(best) && std::sqrt(best) <= ring * cell_) break;
    }
    return best_index;
  }

 private:
  std::array<std::int64_t, 3> coords(const Vec& p) const {
    std::array<std::int64_t, 3> c{0, 0, 0};
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      c[k] = static_cast<std::int64_t>(std::floor(p(k) / cell_));
    }
    return c;
  }
  static std::uint64_t key(const std::array<std::int64_t, 3>& c) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : c) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
  template <typename F>
  static void visit_shell(const std::array<std::int64_t, 3>& c, int ring, int dim, F&& f) {
    const int zr = dim == 3 ? ring : 0;
    for (int dx = -ring; dx <= ring; ++dx) {
      for (int dy = -ring; dy <= ring; ++dy) {
        for (int dz = -zr; dz <= zr; ++dz) {
          const int m = std::max({std::abs(dx), std::abs(dy), std::abs(dz)});
          if (m != ring) continue;
          f({c[0] + dx, c[1] + dy, c[2] + dz});
        }
      }
    }
  }

  const std::vector<Vec>& points_;
  double cell_;
  // Hash collisions only merge buckets; distances are always recomputed.
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
};

// Distance from q to the surface, refining the foot point from parameter u.
double project(const Parametrization& param, const Vec& q, Vec u) {
  Vec x = param.position(u);
  double dist = (x - q).norm();
  for (int it = 0; it < 30; ++it) {
    const Mat frame = tangent_basis(u);
    const ChartJet jet = param.jet(u, frame, false);
    const Mat& t = jet.tangents;
    const Vec residual = jet.position - q;
    const Mat normal_matrix = t.transpose() * t;
    Vec step = -normal_matrix.ldlt().solve(t.transpose() * residual);
    bool improved = false;
    for (int k = 0; k < 20; ++k) {
      Vec candidate = u + frame * step;
      candidate.normalize();
      const double d = (param.position(candidate) - q).norm();
      if (d < dist) {
        u = candidate;
        dist = d;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved || step.norm() < 1e-15) break;
  }
  return dist;
}

double directed(const Cloud& from, const Cloud& to, const Parametrization& to_param,
                double cell) {
  const SpatialHash hash(to.positions, cell);
  const std::size_t m = from.positions.size();
  std::vector<std::size_t> nearest(m);
  std::vector<double> coarse(m);
  for (std::size_t i = 0; i < m; ++i) {
    nearest[i] = hash.nearest(from.positions[i]);
    coarse[i] = (to.positions[nearest[i]] - from.positions[i]).norm();
  }
  // Refinement never increases a distance, so points are refined in
  // decreasing coarse order until no remaining point can beat the maximum.
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return coarse[a] != coarse[b] ? coarse[a] > coarse[b] : a < b;
  });
  double worst = 0.0;
  for (std::size_t i : order) {
    if (coarse[i] <= worst) break;
    const double refined = project(to_param, from.positions[i], to.parameters[nearest[i]]);
    worst = std::max(worst, std::min(coarse[i], refined));
  }
  return worst;
}

}  // namespace

HausdorffResult hausdorff_between(const SurfaceSpec& a, const Anisotropy& gamma_a,
                                  const SurfaceSpec& b, const Anisotropy& gamma_b,
                                  int resolution) {
  if (gamma_a.n() != gamma_b.n()) {
    throw std::invalid_argument("hausdorff_between: surfaces of different dimension");
  }
  const SphereGrid grid = make_grid(gamma_a.n(), resolution);
  const Parametrization pa(a, gamma_a);
  const Parametrization pb(b, gamma_b);
  const Cloud ca = sample_cloud(pa, grid);
  const Cloud cb = sample_cloud(pb, grid);

  HausdorffResult out;
  out.resolution = resolution;
  out.sampling_h = std::max(sampling_spacing(ca, grid), sampling_spacing(cb, grid));
  // Matching parameters bound every nearest-neighbour distance from above;
  // cells of comparable size keep the ring search short.
  double bound = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    bound = std::max(bound, (ca.positions[i] - cb.positions[i]).norm());
  }
  const double cell = std::max({out.sampling_h, 0.5 * bound, 1e-12});
  out.forward = directed(ca, cb, pb, cell);
  out.backward = directed(cb, ca, pa, cell);
  out.distance = std::max(out.forward, out.backward);
  return out;
}

HausdorffResult hausdorff_distance(const SampledSurface& s, const Anisotropy& gamma, double scale,
                                   const Vec& center, int oversample) {
  if (!(scale > 0.0)) throw std::invalid_argument("hausdorff_distance: scale must be > 0");
  if (oversample < 1) throw std::invalid_argument("hausdorff_distance: oversample must be >= 1");
  const Anisotropy own(s.gamma_spec);
  SurfaceSpec target{WulffShape{scale, center, {}}};
  return hausdorff_between(s.spec, own, target, gamma, oversample * s.resolution);
}

}  // namespace aniso
