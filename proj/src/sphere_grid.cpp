#include "aniso/sphere_grid.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace aniso {

double sphere_area(int n) {
  if (n == 1) return 2.0 * kPi;
  if (n == 2) return 4.0 * kPi;
  throw std::invalid_argument("sphere_area: n must be 1 or 2");
}

void gauss_legendre(int count, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(count, 0.0);
  weights.assign(count, 0.0);
  for (int i = 0; i < count; ++i) {
    // Tricomi initial guess, then Newton on P_count.
    double x = std::cos(kPi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= count; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (count == 1) p0 = 1.0;
      dp = count * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= count; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (count == 1) p0 = 1.0;
    dp = count * (x * p1 - p0) / (x * x - 1.0);
    nodes[count - 1 - i] = x;
    weights[count - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

SphereGrid make_grid(int n, int resolution) {
  if (n != 1 && n != 2) {
    throw std::invalid_argument("make_grid: unsupported n = " + std::to_string(n));
  }
  if (resolution < 8) {
    throw std::invalid_argument("make_grid: resolution must be >= 8, got " +
                                std::to_string(resolution));
  }
  SphereGrid grid;
  grid.n = n;
  grid.resolution = resolution;
  if (n == 1) {
    grid.nodes.reserve(resolution);
    const double w = 2.0 * kPi / resolution;
    for (int k = 0; k < resolution; ++k) {
      const double t = w * k;
      grid.nodes.push_back(make_vec({std::cos(t), std::sin(t)}));
      grid.weights.push_back(w);
    }
    return grid;
  }

  std::vector<double> z, wz;
  gauss_legendre(resolution, z, wz);
  const int longitudes = 2 * resolution;
  const double dphi = 2.0 * kPi / longitudes;
  grid.nodes.reserve(static_cast<std::size_t>(resolution) * longitudes);
  for (int i = 0; i < resolution; ++i) {
    const double s = std::sqrt(std::max(0.0, 1.0 - z[i] * z[i]));
    for (int j = 0; j < longitudes; ++j) {
      const double phi = dphi * (j + 0.5);
      grid.nodes.push_back(make_vec({s * std::cos(phi), s * std::sin(phi), z[i]}));
      grid.weights.push_back(wz[i] * dphi);
    }
  }
  const double total = std::accumulate(grid.weights.begin(), grid.weights.end(), 0.0);
  const double scale = sphere_area(2) / total;
  for (double& w : grid.weights) w *= scale;
  return grid;
}

}  // namespace aniso
