#pragma once

#include "aniso/geometry.hpp"

#include <array>
#include <vector>

namespace aniso {

/// Homogeneous polynomial in 2 or 3 variables with exact first and second
/// derivatives.
class HomogeneousPolynomial {
 public:
  struct Term {
    std::array<int, 3> exponents{};
    double coefficient = 0.0;
  };

  HomogeneousPolynomial() = default;
  HomogeneousPolynomial(int dim, std::vector<Term> terms);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::vector<Term>& terms() const { return terms_; }

  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  Mat hessian(const Vec& x) const;
  double laplacian(const Vec& x) const { return hessian(x).trace(); }

 private:
  int dim_ = 3;
  int degree_ = 0;
  std::vector<Term> terms_;
  std::vector<std::vector<Term>> gradient_terms_;              // [i]
  std::vector<std::vector<std::vector<Term>>> hessian_terms_;  // [i][j], i <= j
};

/// Real harmonic of the given degree and order, orthonormal in L^2(S^n), as a
/// homogeneous harmonic polynomial on R^(n+1).
///
/// n = 2: the usual real spherical harmonics Y_lm with |order| <= degree
/// (order < 0 selects the sine family).
/// n = 1: cos(degree * theta) for order >= 0, sin(degree * theta) for
/// order < 0.
HomogeneousPolynomial real_harmonic(int n, int degree, int order);

/// Value, gradient and Hessian of a scalar function at a point.
struct ScalarJet {
  double value = 0.0;
  Vec gradient;
  Mat hessian;
};

/// Jet of y -> P(y) |y|^s. With s = -deg P this is the degree-0 extension of
/// P restricted to the sphere.
ScalarJet homogeneous_jet(const HomogeneousPolynomial& poly, double s, const Vec& y);

struct HarmonicTerm {
  int degree = 0;
  int order = 0;
  double coefficient = 0.0;
};

/// u -> base + sum_k c_k Y_k(u) on S^n, with its degree-0 extension to
/// R^(n+1) \ {0}.
class HarmonicSeries {
 public:
  HarmonicSeries() = default;
  HarmonicSeries(int n, double base, std::vector<HarmonicTerm> terms);

  int n() const { return n_; }
  double base() const { return base_; }
  const std::vector<HarmonicTerm>& terms() const { return terms_; }
  bool is_constant() const { return polys_.empty(); }

  double value(const Vec& u) const;
  ScalarJet jet(const Vec& y) const;

 private:
  int n_ = 2;
  double base_ = 0.0;
  std::vector<HarmonicTerm> terms_;
  std::vector<HomogeneousPolynomial> polys_;
};

}  // namespace aniso
