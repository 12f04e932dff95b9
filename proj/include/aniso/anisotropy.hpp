#pragma once

#include "aniso/geometry.hpp"
#include "aniso/harmonics.hpp"
#include "aniso/sphere_grid.hpp"

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace aniso {

// ---------------------------------------------------------------------------
// Families of smooth positive anisotropies gamma on S^n. Each is evaluated
// through its 1-homogeneous extension to R^(n+1).
// ---------------------------------------------------------------------------

struct Isotropic {};

/// gamma(x) = sqrt(x^T Q x), Q symmetric positive definite.
struct Ellipsoid {
  Mat Q;
};

/// gamma(x) = (sum_i (x_i^2 + reg^2 |x|^2 / (n+1))^(m/2))^(1/m).
struct SmoothedLp {
  double exponent = 4.0;
  double regularizer = 0.05;
};

/// gamma(nu) = base_radius + amplitude * Y_{degree,order}(nu), with Y an
/// orthonormal real harmonic (see real_harmonic).
struct HarmonicPerturbation {
  double base_radius = 1.0;
  double amplitude = 0.0;
  int degree = 2;
  int order = 0;
};

struct AnisotropySpec {
  int n = 2;
  std::variant<Isotropic, Ellipsoid, SmoothedLp, HarmonicPerturbation> family;

  std::string family_name() const;
};

class ConvexityError : public std::runtime_error {
 public:
  ConvexityError(const std::string& what, Vec witness, double min_eigenvalue)
      : std::runtime_error(what), witness_(std::move(witness)), min_eigenvalue_(min_eigenvalue) {}
  const Vec& witness() const { return witness_; }
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  Vec witness_;
  double min_eigenvalue_;
};

struct DualNormResult {
  double value = 0.0;
  Vec direction;  // maximizing unit normal nu*
  Vec gradient;   // nu* / gamma(nu*)
  int iterations = 0;
  bool converged = true;
  bool multiple_maximizers = false;
};

/// Evaluator for one anisotropy. Immutable after construction; every query
/// is a pure function of its arguments.
class Anisotropy {
 public:
  explicit Anisotropy(AnisotropySpec spec);

  const AnisotropySpec& spec() const { return spec_; }
  int n() const { return spec_.n; }
  int ambient_dim() const { return spec_.n + 1; }

  /// 1-homogeneous extension gamma(x) = |x| gamma(x / |x|). Throws
  /// std::domain_error for x = 0.
  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  Mat hessian(const Vec& x) const;
  ScalarJet jet(const Vec& x) const;

  /// D^3 gamma(x)[a, ., .] by central differences of the analytic Hessian.
  Mat third_derivative(const Vec& x, const Vec& a, double step = 5e-4) const;

  /// A_gamma(nu) = Hess^{S^n} gamma + gamma I on nu^perp, computed as the
  /// ambient Hessian of the extension restricted to nu^perp.
  TangentOperator a_gamma(const Vec& nu) const;
  /// A_gamma(nu) in a caller-supplied orthonormal basis of nu^perp.
  Mat a_gamma_in(const Vec& nu, const Mat& basis) const;

  /// xi(nu) = gamma(nu) nu + grad^{S^n} gamma(nu), the ambient gradient.
  Vec wulff_point(const Vec& nu) const;

  /// gamma*(x) = sup_{|nu|=1} <x, nu> / gamma(nu): global seeding over a
  /// dense sphere grid, projected Newton ascent from the best 8 seeds.
  double dual_norm(const Vec& x) const;
  DualNormResult dual_norm_solve(const Vec& x) const;
  /// Projected Newton ascent from a single seed direction. Falls back to the
  /// seeded solve if the ascent does not converge.
  DualNormResult dual_norm_from(const Vec& x, const Vec& seed) const;
  /// Maximizer nu* and gradient nu*/gamma(nu*) of gamma* at x != 0.
  DualNormResult dual_norm_gradient(const Vec& x) const;

  /// gamma*(x) gamma(y) - <x, y> >= 0.
  double fenchel_gap(const Vec& x, const Vec& y) const;

  /// Largest sampled value of gamma on the seed grid.
  double max_on_sphere() const { return max_value_; }
  double min_on_sphere() const { return min_value_; }

 private:
  DualNormResult ascend(const Vec& x, Vec nu, int max_iterations) const;
  void require_dim(const Vec& x, const char* where) const;

  AnisotropySpec spec_;
  Mat q_;
  HomogeneousPolynomial harmonic_;
  std::vector<Vec> seeds_;
  std::vector<double> seed_inverse_gamma_;
  double max_value_ = 0.0;
  double min_value_ = 0.0;
};

struct ConvexityReport {
  double min_eigenvalue = 0.0;
  Vec witness;
  bool convex() const { return min_eigenvalue > 0.0; }
};

/// Smallest eigenvalue of A_gamma over the grid nodes, with the node that
/// attains it. A non-positive value is a sampled convexity violation.
ConvexityReport check_convexity(const Anisotropy& gamma, const SphereGrid& grid);

/// lambda = min over nu and unit u in nu^perp of <A_gamma(nu) u, u>: grid
/// minimum refined by a local pattern search. Throws ConvexityError when the
/// sampled convexity check fails.
double lambda_min(const Anisotropy& gamma, const SphereGrid& grid);

/// Smallest eigenvalue of A_gamma(nu).
double min_a_gamma_eigenvalue(const Anisotropy& gamma, const Vec& nu);

}  // namespace aniso
