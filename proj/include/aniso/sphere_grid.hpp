#pragma once

#include "aniso/geometry.hpp"

#include <cstddef>
#include <vector>

namespace aniso {

/// Quadrature rule on the unit sphere S^n (n = 1 or 2).
///
/// n = 1: `resolution` equispaced nodes on the circle (trapezoidal rule).
/// n = 2: `resolution` Gauss-Legendre nodes in cos(theta) times
/// 2 * `resolution` equispaced longitudes. Weights are rescaled so that they
/// sum to |S^n| exactly.
struct SphereGrid {
  int n = 2;
  int resolution = 0;
  std::vector<Vec> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

SphereGrid make_grid(int n, int resolution);

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
void gauss_legendre(int count, std::vector<double>& nodes, std::vector<double>& weights);

/// |S^n|: 2 pi for n = 1, 4 pi for n = 2.
double sphere_area(int n);

}  // namespace aniso
