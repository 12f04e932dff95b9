#include "aniso/anisotropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace aniso {

namespace {

constexpr int kSeedCount = 8;
constexpr int kMaxAscentIterations = 50;

double min_eigenvalue(const Mat& m) {
  if (m.rows() == 1) return m(0, 0);
  // 2x2 symmetric closed form.
  const double a = m(0, 0);
  const double b = 0.5 * (m(0, 1) + m(1, 0));
  const double d = m(1, 1);
  const double mean = 0.5 * (a + d);
  const double half_diff = 0.5 * (a - d);
  return mean - std::hypot(half_diff, b);
}

ScalarJet isotropic_jet(const Vec& x) {
  const double r = x.norm();
  const auto dim = x.size();
  ScalarJet j;
  j.value = r;
  j.gradient = x / r;
  j.hessian = (Mat::Identity(dim, dim) - (x * x.transpose()) / (r * r)) / r;
  return j;
}

}  // namespace

std::string AnisotropySpec::family_name() const {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Isotropic>) return "isotropic";
        if constexpr (std::is_same_v<T, Ellipsoid>) return "ellipsoid";
        if constexpr (std::is_same_v<T, SmoothedLp>) return "smoothed_lp";
        if constexpr (std::is_same_v<T, HarmonicPerturbation>) return "harmonic_perturbation";
      },
      family);
}

Anisotropy::Anisotropy(AnisotropySpec spec) : spec_(std::move(spec)) {
  if (spec_.n != 1 && spec_.n != 2) {
    throw std::invalid_argument("AnisotropySpec: n must be 1 or 2");
  }
  const int dim = ambient_dim();
  if (const auto* e = std::get_if<Ellipsoid>(&spec_.family)) {
    if (e->Q.rows() != dim || e->Q.cols() != dim) {
      throw std::invalid_argument("Ellipsoid: Q must be (n+1) x (n+1)");
    }
    if ((e->Q - e->Q.transpose()).norm() > 1e-12 * e->Q.norm()) {
      throw std::invalid_argument("Ellipsoid: Q must be symmetric");
    }
    q_ = 0.5 * (e->Q + e->Q.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> eig(q_);
    if (eig.eigenvalues().minCoeff() <= 0.0) {
      throw std::invalid_argument("Ellipsoid: Q must be positive definite");
    }
  } else if (const auto* s = std::get_if<SmoothedLp>(&spec_.family)) {
    if (!(s->exponent >= 2.0)) throw std::invalid_argument("SmoothedLp: exponent must be >= 2");
    if (!(s->regularizer > 0.0)) throw std::invalid_argument("SmoothedLp: regularizer must be > 0");
  } else if (const auto* h = std::get_if<HarmonicPerturbation>(&spec_.family)) {
    if (!(h->base_radius > 0.0)) {
      throw std::invalid_argument("HarmonicPerturbation: base_radius must be > 0");
    }
    harmonic_ = real_harmonic(spec_.n, h->degree, h->order);
  }

  const SphereGrid seed_grid = spec_.n == 2 ? make_grid(2, 48) : make_grid(1, 1024);
  seeds_ = seed_grid.nodes;
  seed_inverse_gamma_.reserve(seeds_.size());
  max_value_ = 0.0;
  min_value_ = std::numeric_limits<double>::infinity();
  for (const Vec& nu : seeds_) {
    const double g = value(nu);
    if (!(g > 0.0)) {
      std::ostringstream msg;
      msg << "anisotropy is not positive: gamma = " << g << " at nu = " << nu.transpose();
      throw std::invalid_argument(msg.str());
    }
    max_value_ = std::max(max_value_, g);
    min_value_ = std::min(min_value_, g);
    seed_inverse_gamma_.push_back(1.0 / g);
  }
}

void Anisotropy::require_dim(const Vec& x, const char* where) const {
  if (x.size() != ambient_dim()) {
    throw std::invalid_argument(std::string(where) + ": vector has dimension " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(ambient_dim()));
  }
}

ScalarJet Anisotropy::jet(const Vec& x) const {
  require_dim(x, "Anisotropy::jet");
  if (x.squaredNorm() == 0.0) throw std::domain_error("gamma is not differentiable at 0");
  const auto dim = x.size();
  return std::visit(
      [&](const auto& f) -> ScalarJet {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Isotropic>) {
          return isotropic_jet(x);
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          const Vec qx = q_ * x;
          const double g = std::sqrt(x.dot(qx));
          ScalarJet j;
          j.value = g;
          j.gradient = qx / g;
          j.hessian = q_ / g - (qx * qx.transpose()) / (g * g * g);
          return j;
        } else if constexpr (std::is_same_v<T, SmoothedLp>) {
          const double m = f.exponent;
          const double c = f.regularizer * f.regularizer / static_cast<double>(dim);
          const double r2 = x.squaredNorm();
          double s = 0.0;
          Vec ds = Vec::Zero(dim);
          Mat dds = Mat::Zero(dim, dim);
          const Mat eye = Mat::Identity(dim, dim);
          for (Eigen::Index i = 0; i < dim; ++i) {
            const double u = x(i) * x(i) + c * r2;
            Vec du = 2.0 * c * x;
            du(i) += 2.0 * x(i);
            Mat ddu = 2.0 * c * eye;
            ddu(i, i) += 2.0;
            const double up = std::pow(u, 0.5 * m);
            s += up;
            ds += 0.5 * m * (up / u) * du;
            dds += 0.5 * m * (0.5 * m - 1.0) * (up / (u * u)) * (du * du.transpose()) +
                   0.5 * m * (up / u) * ddu;
          }
          const double g = std::pow(s, 1.0 / m);
          ScalarJet j;
          j.value = g;
          j.gradient = (g / (m * s)) * ds;
          j.hessian = (g / (m * s)) * dds + (1.0 / m) * (1.0 / m - 1.0) * (g / (s * s)) *
                                                (ds * ds.transpose());
          return j;
        } else {
          ScalarJet j = isotropic_jet(x);
          j.value *= f.base_radius;
          j.gradient *= f.base_radius;
          j.hessian *= f.base_radius;
          if (f.amplitude != 0.0) {
            const ScalarJet y = homogeneous_jet(harmonic_, 1.0 - harmonic_.degree(), x);
            j.value += f.amplitude * y.value;
            j.gradient += f.amplitude * y.gradient;
            j.hessian += f.amplitude * y.hessian;
          }
          return j;
        }
      },
      spec_.family);
}

double Anisotropy::value(const Vec& x) const {
  require_dim(x, "gamma_value");
  if (x.squaredNorm() == 0.0) throw std::domain_error("gamma_value: zero vector");
  if (std::holds_alternative<Isotropic>(spec_.family)) return x.norm();
  if (std::holds_alternative<Ellipsoid>(spec_.family)) return std::sqrt(x.dot(q_ * x));
  if (const auto* h = std::get_if<HarmonicPerturbation>(&spec_.family)) {
    const double r = x.norm();
    double g = h->base_radius * r;
    if (h->amplitude != 0.0) {
      g += h->amplitude * harmonic_.value(x) * std::pow(r, 1.0 - harmonic_.degree());
    }
    return g;
  }
  return jet(x).value;
}

Vec Anisotropy::gradient(const Vec& x) const { return jet(x).gradient; }

Mat Anisotropy::hessian(const Vec& x) const { return jet(x).hessian; }

Mat Anisotropy::third_derivative(const Vec& x, const Vec& a, double step) const {
  const double h = step * std::max(1.0, x.norm());
  auto central = [&](double t) { return Mat((hessian(x + t * a) - hessian(x - t * a)) / (2.0 * t)); };
  // Richardson extrapolation removes the O(h^2) term.
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

Mat Anisotropy::a_gamma_in(const Vec& nu, const Mat& basis) const {
  const Mat m = basis.transpose() * hessian(nu) * basis;
  return 0.5 * (m + m.transpose());
}

TangentOperator Anisotropy::a_gamma(const Vec& nu) const {
  require_dim(nu, "a_gamma");
  if (std::abs(nu.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("a_gamma: direction must be a unit vector");
  }
  TangentOperator op;
  op.base_direction = nu;
  op.basis = tangent_basis(nu);
  op.matrix = a_gamma_in(nu, op.basis);
  return op;
}

Vec Anisotropy::wulff_point(const Vec& nu) const {
  require_dim(nu, "wulff_point");
  if (std::abs(nu.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("wulff_point: direction must be a unit vector");
  }
  return gradient(nu);
}

DualNormResult Anisotropy::ascend(const Vec& x, Vec nu, int max_iterations) const {
  const double xnorm = x.norm();
  auto objective = [&](const Vec& v) { return x.dot(v) / value(v); };

  DualNormResult out;
  out.converged = false;
  double phi = objective(nu);
  int it = 0;
  for (; it < max_iterations; ++it) {
    const ScalarJet j = jet(nu);
    const double g = j.value;
    phi = x.dot(nu) / g;
    const Mat basis = tangent_basis(nu);
    const Vec grad = (x - phi * j.gradient) / g;
    const Vec gs = basis.transpose() * grad;
    const double scale = xnorm / g;
    if (gs.norm() <= 1e-12 * scale) {
      out.converged = true;
      break;
    }
    const double xn = x.dot(nu);
    const Mat hess_amb = -(x * j.gradient.transpose() + j.gradient * x.transpose()) / (g * g) +
                         2.0 * xn * (j.gradient * j.gradient.transpose()) / (g * g * g) -
                         xn * j.hessian / (g * g);
    const Mat hs = basis.transpose() * hess_amb * basis;
    Vec step;
    Eigen::LLT<Mat> llt(-hs);
    if (llt.info() == Eigen::Success) {
      step = llt.solve(gs);
    } else {
      const double curvature = std::max(hs.norm(), scale);
      step = gs / curvature;
    }
    const double len = step.norm();
    if (len > 0.5) step *= 0.5 / len;

    bool accepted = false;
    for (int k = 0; k < 40; ++k) {
      Vec candidate = nu + basis * step;
      candidate.normalize();
      const double cphi = objective(candidate);
      if (cphi >= phi - 4.0 * std::numeric_limits<double>::epsilon() * std::abs(phi)) {
        nu = candidate;
        phi = cphi;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      out.converged = gs.norm() <= 1e-9 * scale;
      break;
    }
  }
  out.iterations = it;
  out.value = objective(nu);
  out.direction = nu;
  out.gradient = nu / value(nu);
  return out;
}

DualNormResult Anisotropy::dual_norm_solve(const Vec& x) const {
  require_dim(x, "dual_norm");
  if (x.squaredNorm() == 0.0) {
    DualNormResult zero;
    zero.direction = Vec::Unit(ambient_dim(), 0);
    zero.gradient = Vec::Zero(ambient_dim());
    return zero;
  }
  std::vector<double> scores(seeds_.size());
  for (std::size_t i = 0; i < seeds_.size(); ++i) {
    scores[i] = x.dot(seeds_[i]) * seed_inverse_gamma_[i];
  }
  std::vector<std::size_t> order(seeds_.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t top = std::min<std::size_t>(kSeedCount, order.size());
  std::partial_sort(order.begin(), order.begin() + top, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
                    });

  std::vector<DualNormResult> candidates;
  candidates.reserve(top);
  for (std::size_t k = 0; k < top; ++k) {
    candidates.push_back(ascend(x, seeds_[order[k]], kMaxAscentIterations));
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    if (candidates[k].value > candidates[best].value) best = k;
  }
  DualNormResult out = candidates[best];
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (k == best || !candidates[k].converged) continue;
    const bool tied =
        std::abs(candidates[k].value - out.value) <= 1e-10 * std::abs(out.value);
    const bool distinct = (candidates[k].direction - out.direction).norm() > 1e-6;
    if (tied && distinct) out.multiple_maximizers = true;
  }
  return out;
}

DualNormResult Anisotropy::dual_norm_from(const Vec& x, const Vec& seed) const {
  require_dim(x, "dual_norm");
  if (x.squaredNorm() == 0.0) return dual_norm_solve(x);
  Vec nu = seed;
  if (nu.size() != x.size() || !(nu.norm() > 0.0)) nu = x;
  nu.normalize();
  DualNormResult r = ascend(x, nu, kMaxAscentIterations);
  if (!r.converged || !(r.value > 0.0)) return dual_norm_solve(x);
  return r;
}

double Anisotropy::dual_norm(const Vec& x) const { return dual_norm_solve(x).value; }

DualNormResult Anisotropy::dual_norm_gradient(const Vec& x) const {
  require_dim(x, "dual_norm_gradient");
  if (x.squaredNorm() == 0.0) throw std::domain_error("dual_norm_gradient: zero vector");
  return dual_norm_solve(x);
}

double Anisotropy::fenchel_gap(const Vec& x, const Vec& y) const {
  return dual_norm(x) * value(y) - x.dot(y);
}

double min_a_gamma_eigenvalue(const Anisotropy& gamma, const Vec& nu) {
  return min_eigenvalue(gamma.a_gamma_in(nu, tangent_basis(nu)));
}

ConvexityReport check_convexity(const Anisotropy& gamma, const SphereGrid& grid) {
  if (grid.size() == 0) throw std::invalid_argument("check_convexity: empty grid");
  if (grid.n != gamma.n()) throw std::invalid_argument("check_convexity: grid dimension mismatch");
  ConvexityReport report;
  report.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const Vec& nu : grid.nodes) {
    const double e = min_a_gamma_eigenvalue(gamma, nu);
    if (e < report.min_eigenvalue) {
      report.min_eigenvalue = e;
      report.witness = nu;
    }
  }
  return report;
}

double lambda_min(const Anisotropy& gamma, const SphereGrid& grid) {
  const ConvexityReport report = check_convexity(gamma, grid);
  if (!report.convex()) {
    std::ostringstream msg;
    msg << "convexity condition fails: min eigenvalue " << report.min_eigenvalue
        << " at nu = " << report.witness.transpose();
    throw ConvexityError(msg.str(), report.witness, report.min_eigenvalue);
  }

  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ranked.emplace_back(min_a_gamma_eigenvalue(gamma, grid.nodes[i]), i);
  }
  const std::size_t starts = std::min<std::size_t>(8, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + starts, ranked.end());

  double best = report.min_eigenvalue;
  const double initial_step = kPi / grid.resolution;
  for (std::size_t s = 0; s < starts; ++s) {
    Vec nu = grid.nodes[ranked[s].second];
    double value = ranked[s].first;
    double step = initial_step;
    while (step > 1e-10) {
      const Mat basis = tangent_basis(nu);
      bool moved = false;
      for (Eigen::Index k = 0; k < basis.cols() && !moved; ++k) {
        for (double sign : {1.0, -1.0}) {
          Vec candidate = nu + sign * step * basis.col(k);
          candidate.normalize();
          const double e = min_a_gamma_eigenvalue(gamma, candidate);
          if (e < value) {
            nu = candidate;
            value = e;
            moved = true;
            break;
          }
        }
      }
      if (!moved) step *= 0.5;
    }
    best = std::min(best, value);
  }
  if (!(best > 0.0)) {
    throw ConvexityError("convexity condition fails after refinement", Vec(), best);
  }
  return best;
}

}  // namespace aniso
