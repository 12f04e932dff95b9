#pragma once

#include <Eigen/Dense>

#include <initializer_list>

namespace aniso {

// Ambient space is R^(n+1) with n in {1, 2}; storage is fixed at 3 so small
// vectors and matrices never touch the heap.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;

inline constexpr double kPi = 3.14159265358979323846;

Vec make_vec(std::initializer_list<double> values);

/// Orthonormal basis of the orthogonal complement of the unit vector `nu`,
/// returned as the columns of a (n+1) x n matrix. Continuous in `nu` away
/// from a measure-zero seam and deterministic.
Mat tangent_basis(const Vec& nu);

/// Unit normal to the hyperplane spanned by the columns of `tangents`
/// ((n+1) x n), sign unspecified.
Vec orthogonal_complement(const Mat& tangents);

/// Linear operator on the tangent plane nu^perp expressed in an orthonormal
/// basis of that plane.
struct TangentOperator {
  Vec base_direction;
  Mat matrix;  // n x n
  Mat basis;   // (n+1) x n, orthonormal columns

  double trace() const { return matrix.trace(); }
  double frobenius() const { return matrix.norm(); }
  /// Same operator as an ambient (n+1) x (n+1) matrix that vanishes on the
  /// normal line.
  Mat ambient() const { return basis * matrix * basis.transpose(); }
};

}  // namespace aniso
