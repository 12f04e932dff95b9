#include "aniso/harmonics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace aniso {

namespace {

using Exponents = std::array<int, 3>;
using PolyMap = std::map<Exponents, double>;

std::vector<HomogeneousPolynomial::Term> to_terms(const PolyMap& map) {
  std::vector<HomogeneousPolynomial::Term> out;
  for (const auto& [e, c] : map) {
    if (c != 0.0) out.push_back({e, c});
  }
  return out;
}

PolyMap multiply(const PolyMap& a, const PolyMap& b) {
  PolyMap out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      out[{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}] += ca * cb;
    }
  }
  return out;
}

std::vector<HomogeneousPolynomial::Term> differentiate(
    const std::vector<HomogeneousPolynomial::Term>& terms, int axis) {
  PolyMap out;
  for (const auto& t : terms) {
    const int e = t.exponents[axis];
    if (e == 0) continue;
    Exponents d = t.exponents;
    d[axis] -= 1;
    out[d] += t.coefficient * e;
  }
  return to_terms(out);
}

double evaluate(const std::vector<HomogeneousPolynomial::Term>& terms, int dim,
                const std::array<std::array<double, 16>, 3>& powers) {
  double sum = 0.0;
  for (const auto& t : terms) {
    double m = t.coefficient;
    for (int k = 0; k < dim; ++k) m *= powers[k][t.exponents[k]];
    sum += m;
  }
  return sum;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// Re/Im of (x + i y)^m as a polynomial in (x, y).
PolyMap complex_power(int m, bool imaginary) {
  PolyMap out;
  for (int k = 0; k <= m; ++k) {
    const bool odd = (k % 2) == 1;
    if (odd != imaginary) continue;
    const int half = imaginary ? (k - 1) / 2 : k / 2;
    const double sign = (half % 2 == 0) ? 1.0 : -1.0;
    out[{m - k, k, 0}] += sign * binomial(m, k);
  }
  return out;
}

constexpr int kMaxDegree = 15;

}  // namespace

HomogeneousPolynomial::HomogeneousPolynomial(int dim, std::vector<Term> terms)
    : dim_(dim), terms_(std::move(terms)) {
  if (dim_ != 2 && dim_ != 3) {
    throw std::invalid_argument("HomogeneousPolynomial: dimension must be 2 or 3");
  }
  degree_ = -1;
  for (const auto& t : terms_) {
    const int d = t.exponents[0] + t.exponents[1] + t.exponents[2];
    if (dim_ == 2 && t.exponents[2] != 0) {
      throw std::invalid_argument("HomogeneousPolynomial: z exponent in a 2-variable polynomial");
    }
    if (degree_ >= 0 && d != degree_) {
      throw std::invalid_argument("HomogeneousPolynomial: terms of mixed degree");
    }
    degree_ = d;
  }
  if (degree_ < 0) degree_ = 0;
  if (degree_ > kMaxDegree) {
    throw std::invalid_argument("HomogeneousPolynomial: degree above " + std::to_string(kMaxDegree));
  }
  gradient_terms_.resize(dim_);
  hessian_terms_.assign(dim_, std::vector<std::vector<Term>>(dim_));
  for (int i = 0; i < dim_; ++i) {
    gradient_terms_[i] = differentiate(terms_, i);
    for (int j = i; j < dim_; ++j) hessian_terms_[i][j] = differentiate(gradient_terms_[i], j);
  }
}

namespace {
std::array<std::array<double, 16>, 3> power_table(const Vec& x, int dim, int degree) {
  std::array<std::array<double, 16>, 3> p{};
  for (int k = 0; k < dim; ++k) {
    p[k][0] = 1.0;
    for (int e = 1; e <= degree; ++e) p[k][e] = p[k][e - 1] * x(k);
  }
  return p;
}
}  // namespace

double HomogeneousPolynomial::value(const Vec& x) const {
  return evaluate(terms_, dim_, power_table(x, dim_, degree_));
}

Vec HomogeneousPolynomial::gradient(const Vec& x) const {
  const auto p = power_table(x, dim_, degree_);
  Vec g(dim_);
  for (int i = 0; i < dim_; ++i) g(i) = evaluate(gradient_terms_[i], dim_, p);
  return g;
}

Mat HomogeneousPolynomial::hessian(const Vec& x) const {
  const auto p = power_table(x, dim_, degree_);
  Mat h(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = i; j < dim_; ++j) {
      h(i, j) = evaluate(hessian_terms_[i][j], dim_, p);
      h(j, i) = h(i, j);
    }
  }
  return h;
}

HomogeneousPolynomial real_harmonic(int n, int degree, int order) {
  if (degree < 0 || degree > kMaxDegree) {
    throw std::invalid_argument("real_harmonic: degree must be in [0, " +
                                std::to_string(kMaxDegree) + "]");
  }
  if (n == 1) {
    if (degree == 0 && order < 0) {
      throw std::invalid_argument("real_harmonic: degree 0 has no sine term on the circle");
    }
    const double norm = degree == 0 ? 1.0 / std::sqrt(2.0 * kPi) : 1.0 / std::sqrt(kPi);
    PolyMap p = complex_power(degree, order < 0);
    for (auto& [e, c] : p) c *= norm;
    return HomogeneousPolynomial(2, to_terms(p));
  }
  if (n != 2) throw std::invalid_argument("real_harmonic: n must be 1 or 2");
  const int m = std::abs(order);
  if (m > degree) throw std::invalid_argument("real_harmonic: |order| must not exceed degree");

  // Legendre P_l(t) = 2^-l sum_k (-1)^k C(l,k) C(2l-2k,l) t^(l-2k), then d^m/dt^m.
  std::map<int, double> legendre;
  for (int k = 0; 2 * k <= degree; ++k) {
    const double c = ((k % 2 == 0) ? 1.0 : -1.0) * binomial(degree, k) *
                     binomial(2 * degree - 2 * k, degree) / std::pow(2.0, degree);
    legendre[degree - 2 * k] += c;
  }
  std::map<int, double> derived;
  for (const auto& [e, c] : legendre) {
    if (e < m) continue;
    derived[e - m] += c * factorial(e) / factorial(e - m);
  }
  // r^(l-m) * t^(l-m-2j) = z^(l-m-2j) * (x^2 + y^2 + z^2)^j
  const PolyMap r2 = {{{2, 0, 0}, 1.0}, {{0, 2, 0}, 1.0}, {{0, 0, 2}, 1.0}};
  PolyMap radial;
  for (const auto& [e, c] : derived) {
    const int j = (degree - m - e) / 2;
    PolyMap term = {{{0, 0, e}, c}};
    for (int k = 0; k < j; ++k) term = multiply(term, r2);
    for (const auto& [te, tc] : term) radial[te] += tc;
  }
  PolyMap azimuthal = complex_power(m, order < 0);
  PolyMap poly = multiply(azimuthal, radial);

  double norm = std::sqrt((2.0 * degree + 1.0) / (4.0 * kPi) * factorial(degree - m) /
                          factorial(degree + m));
  if (m != 0) norm *= std::sqrt(2.0);
  for (auto& [e, c] : poly) c *= norm;
  return HomogeneousPolynomial(3, to_terms(poly));
}

ScalarJet homogeneous_jet(const HomogeneousPolynomial& poly, double s, const Vec& y) {
  const double r2 = y.squaredNorm();
  const double r = std::sqrt(r2);
  const double w = std::pow(r, s);
  const Vec grad_w = s * std::pow(r, s - 2.0) * y;
  const auto dim = y.size();
  const Mat hess_w = s * std::pow(r, s - 2.0) * Mat::Identity(dim, dim) +
                     s * (s - 2.0) * std::pow(r, s - 4.0) * (y * y.transpose());

  const double p = poly.value(y);
  const Vec grad_p = poly.gradient(y);
  const Mat hess_p = poly.hessian(y);

  ScalarJet jet;
  jet.value = p * w;
  jet.gradient = w * grad_p + p * grad_w;
  jet.hessian = w * hess_p + grad_p * grad_w.transpose() + grad_w * grad_p.transpose() + p * hess_w;
  return jet;
}

HarmonicSeries::HarmonicSeries(int n, double base, std::vector<HarmonicTerm> terms)
    : n_(n), base_(base), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.coefficient == 0.0) continue;
    HomogeneousPolynomial p = real_harmonic(n_, t.degree, t.order);
    std::vector<HomogeneousPolynomial::Term> scaled = p.terms();
    for (auto& term : scaled) term.coefficient *= t.coefficient;
    polys_.emplace_back(n_ + 1, std::move(scaled));
  }
}

double HarmonicSeries::value(const Vec& u) const {
  double v = base_;
  for (const auto& p : polys_) v += p.value(u) / std::pow(u.norm(), p.degree());
  return v;
}

ScalarJet HarmonicSeries::jet(const Vec& y) const {
  const auto dim = y.size();
  ScalarJet out;
  out.value = base_;
  out.gradient = Vec::Zero(dim);
  out.hessian = Mat::Zero(dim, dim);
  for (const auto& p : polys_) {
    const ScalarJet j = homogeneous_jet(p, -static_cast<double>(p.degree()), y);
    out.value += j.value;
    out.gradient += j.gradient;
    out.hessian += j.hessian;
  }
  return out;
}

}  // namespace aniso
