#include "aniso/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace aniso {

Vec make_vec(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

Mat tangent_basis(const Vec& nu) {
  const auto dim = nu.size();
  if (dim == 2) {
    Mat basis(2, 1);
    basis << -nu(1), nu(0);
    return basis;
  }
  if (dim == 3) {
    // Duff et al., "Building an Orthonormal Basis, Revisited".
    const double sign = std::copysign(1.0, nu(2));
    const double a = -1.0 / (sign + nu(2));
    const double b = nu(0) * nu(1) * a;
    Mat basis(3, 2);
    basis.col(0) << 1.0 + sign * nu(0) * nu(0) * a, sign * b, -sign * nu(0);
    basis.col(1) << b, sign + nu(1) * nu(1) * a, -nu(1);
    return basis;
  }
  throw std::invalid_argument("tangent_basis: ambient dimension must be 2 or 3");
}

Vec orthogonal_complement(const Mat& tangents) {
  if (tangents.rows() == 2 && tangents.cols() == 1) {
    Vec n(2);
    n << -tangents(1, 0), tangents(0, 0);
    return n / n.norm();
  }
  if (tangents.rows() == 3 && tangents.cols() == 2) {
    const Eigen::Vector3d a = tangents.col(0);
    const Eigen::Vector3d b = tangents.col(1);
    const Eigen::Vector3d c = a.cross(b);
    return Vec(c / c.norm());
  }
  throw std::invalid_argument("orthogonal_complement: expected a (n+1) x n frame");
}

}  // namespace aniso
