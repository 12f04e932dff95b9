#include "aniso/radius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace aniso {

namespace {

class MinimaxObjective {
 public:
  MinimaxObjective(std::span<const Vec> points, const Anisotropy& gamma, std::vector<Vec> seeds)
      : points_(points), gamma_(gamma), seeds_(std::move(seeds)) {}

  DualNormResult evaluate(std::size_t i, const Vec& x) {
    DualNormResult r = gamma_.dual_norm_from(points_[i] - x, seeds_[i]);
    seeds_[i] = r.direction;
    return r;
  }

  struct Value {
    double f = -std::numeric_limits<double>::infinity();
    std::size_t argmax = 0;
    Vec gradient;  // of x0 -> gamma*(X_argmax - x0)
  };

  Value max_over(std::span<const std::size_t> indices, const Vec& x) {
    Value v;
    for (std::size_t i : indices) {
      DualNormResult r = evaluate(i, x);
      if (r.value > v.f) {
        v.f = r.value;
        v.argmax = i;
        v.gradient = -r.gradient;
      }
    }
    return v;
  }

  std::size_t size() const { return points_.size(); }

 private:
  std::span<const Vec> points_;
  const Anisotropy& gamma_;
  std::vector<Vec> seeds_;
};

struct CuttingPlaneResult {
  Vec x;
  double f = 0.0;
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Central-cut ellipsoid method on the working set, starting from the ball
// B(center, radius). Tracks the best iterate and the lower bound
// f(x_k) - sqrt(g^T P g).
CuttingPlaneResult ellipsoid_method(MinimaxObjective& objective,
                                    std::span<const std::size_t> working, const Vec& center,
                                    double radius, double tolerance, int budget) {
  const auto dim = center.size();
  const double d = static_cast<double>(dim);
  Vec x = center;
  Mat shape = radius * radius * Mat::Identity(dim, dim);
  CuttingPlaneResult out;
  out.x = x;
  out.f = std::numeric_limits<double>::infinity();
  double lower = -std::numeric_limits<double>::infinity();

  for (int it = 0; it < budget; ++it) {
    const MinimaxObjective::Value v = objective.max_over(working, x);
    out.iterations = it + 1;
    if (v.f < out.f) {
      out.f = v.f;
      out.x = x;
    }
    const Vec pg = shape * v.gradient;
    const double gpg = v.gradient.dot(pg);
    if (!(gpg > 0.0)) {
      out.gap = 0.0;
      out.converged = true;
      return out;
    }
    const double width = std::sqrt(gpg);
    lower = std::max(lower, v.f - width);
    out.gap = out.f - lower;
    if (out.gap <= tolerance) {
      out.converged = true;
      return out;
    }
    const Vec step = pg / width;
    x -= step / (d + 1.0);
    shape = (d * d / (d * d - 1.0)) * (shape - (2.0 / (d + 1.0)) * (step * step.transpose()));
    shape = 0.5 * (shape + shape.transpose());
  }
  return out;
}

}  // namespace

RadiusSolution minimax_center(std::span<const Vec> points, const Anisotropy& gamma,
                              const RadiusOptions& options, std::span<const Vec> seeds) {
  if (points.empty()) throw std::invalid_argument("minimax_center: no points");
  const std::size_t count = points.size();
  const auto dim = points.front().size();
  if (dim != gamma.ambient_dim()) {
    throw std::invalid_argument("minimax_center: point dimension does not match anisotropy");
  }

  Vec com = Vec::Zero(dim);
  for (const Vec& p : points) com += p;
  com /= static_cast<double>(count);
  double spread = 0.0;
  for (const Vec& p : points) spread = std::max(spread, (p - com).norm());

  std::vector<Vec> initial_seeds(count);
  for (std::size_t i = 0; i < count; ++i) {
    initial_seeds[i] = (seeds.size() == count) ? seeds[i] : Vec(points[i] - com);
  }
  MinimaxObjective objective(points, gamma, std::move(initial_seeds));

  RadiusSolution solution;
  if (spread == 0.0) {
    solution.center = com;
    solution.radius = 0.0;
    solution.converged = true;
  } else {
    std::vector<double> values(count);
    double f_com = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      values[i] = objective.evaluate(i, com).value;
      f_com = std::max(f_com, values[i]);
    }
    // Every minimizer x* obeys |p - x*| <= gamma_max gamma*(p - x*) <= gamma_max f(com).
    const double ball = 1.05 * (gamma.max_on_sphere() * f_com + spread);
    const double tolerance = options.tolerance * 2.0 * spread;

    std::vector<std::size_t> working;
    const std::size_t stride = std::max<std::size_t>(1, count / std::max<std::size_t>(1, options.working_set));
    for (std::size_t i = 0; i < count; i += stride) working.push_back(i);
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    const std::size_t extremes = std::min<std::size_t>(32, count);
    std::partial_sort(order.begin(), order.begin() + extremes, order.end(),
                      [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    working.insert(working.end(), order.begin(), order.begin() + extremes);
    std::sort(working.begin(), working.end());
    working.erase(std::unique(working.begin(), working.end()), working.end());

    int budget = options.max_iterations;
    Vec x = com;
    for (int round = 0; round < 64; ++round) {
      const CuttingPlaneResult cp = ellipsoid_method(objective, working, com, ball, tolerance, budget);
      budget -= cp.iterations;
      solution.iterations += cp.iterations;
      solution.final_step = cp.gap;
      x = cp.x;

      double f_all = 0.0;
      for (std::size_t i = 0; i < count; ++i) {
        values[i] = objective.evaluate(i, x).value;
        f_all = std::max(f_all, values[i]);
      }
      if (f_all <= cp.f + tolerance) {
        solution.converged = cp.converged;
        break;
      }
      if (budget <= 0) break;
      std::vector<std::size_t> violators;
      for (std::size_t i = 0; i < count; ++i) {
        if (values[i] > cp.f + tolerance) violators.push_back(i);
      }
      const std::size_t add = std::min<std::size_t>(64, violators.size());
      std::partial_sort(violators.begin(), violators.begin() + add, violators.end(),
                        [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
      working.insert(working.end(), violators.begin(), violators.begin() + add);
      std::sort(working.begin(), working.end());
      working.erase(std::unique(working.begin(), working.end()), working.end());
    }
    solution.center = x;
  }

  solution.dual_values.resize(count);
  solution.dual_directions.resize(count);
  solution.radius = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const DualNormResult r = objective.evaluate(i, solution.center);
    solution.dual_values[i] = r.value;
    solution.dual_directions[i] = r.direction;
    solution.radius = std::max(solution.radius, r.value);
  }
  const double threshold = solution.radius * (1.0 - options.active_tolerance);
  for (std::size_t i = 0; i < count; ++i) {
    if (solution.dual_values[i] >= threshold) solution.active_nodes.push_back(i);
  }
  return solution;
}

RadiusSolution extrinsic_radius(const SampledSurface& s, const Anisotropy& gamma,
                                const RadiusOptions& options) {
  if (s.size() == 0) throw std::invalid_argument("extrinsic_radius: empty surface");
  const std::vector<Vec> points = s.positions();
  std::vector<Vec> seeds;
  seeds.reserve(s.size());
  for (const auto& node : s.nodes) seeds.push_back(-node.normal);
  return minimax_center(points, gamma, options, seeds);
}

std::vector<DualNormResult> dual_norm_field(const SampledSurface& s, const Anisotropy& gamma,
                                            const Vec& x0) {
  std::vector<DualNormResult> out;
  out.reserve(s.size());
  for (const auto& node : s.nodes) {
    out.push_back(gamma.dual_norm_from(node.position - x0, -node.normal));
  }
  return out;
}

bool inclusion_check(const SampledSurface& s, const Anisotropy& gamma, const Vec& x0,
                     double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("inclusion_check: scale must be > 0");
  for (const auto& node : s.nodes) {
    if (gamma.dual_norm_from(node.position - x0, -node.normal).value >= scale) return false;
  }
  return true;
}

double hull_distance_to_origin(std::span<const Vec> points) {
  if (points.empty()) throw std::invalid_argument("hull_distance_to_origin: no points");
  double max_norm2 = 0.0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double n2 = points[i].squaredNorm();
    max_norm2 = std::max(max_norm2, n2);
    if (n2 < points[start].squaredNorm()) start = i;
  }
  if (max_norm2 == 0.0) return 0.0;

  std::vector<std::size_t> corral{start};
  std::vector<double> weights{1.0};
  Vec x = points[start];

  for (int outer = 0; outer < 1000; ++outer) {
    std::size_t best = 0;
    double best_dot = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double d = x.dot(points[i]);
      if (d < best_dot) {
        best_dot = d;
        best = i;
      }
    }
    if (x.squaredNorm() - best_dot <= 1e-14 * max_norm2) break;
    if (std::find(corral.begin(), corral.end(), best) != corral.end()) break;
    corral.push_back(best);
    weights.push_back(0.0);

    for (int minor = 0; minor < 100; ++minor) {
      const auto k = static_cast<Eigen::Index>(corral.size());
      Eigen::MatrixXd system = Eigen::MatrixXd::Zero(k + 1, k + 1);
      for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) system(a, b) = points[corral[a]].dot(points[corral[b]]);
        system(a, k) = 1.0;
        system(k, a) = 1.0;
      }
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
      rhs(k) = 1.0;
      const Eigen::VectorXd sol = system.completeOrthogonalDecomposition().solve(rhs);
      const Eigen::VectorXd alpha = sol.head(k);

      if (alpha.minCoeff() > 1e-14) {
        for (Eigen::Index a = 0; a < k; ++a) weights[a] = alpha(a);
        break;
      }
      double theta = 1.0;
      for (Eigen::Index a = 0; a < k; ++a) {
        if (alpha(a) <= 1e-14) {
          const double denom = weights[a] - alpha(a);
          if (denom > 0.0) theta = std::min(theta, weights[a] / denom);
        }
      }
      for (Eigen::Index a = 0; a < k; ++a) weights[a] = theta * alpha(a) + (1.0 - theta) * weights[a];
      std::vector<std::size_t> kept;
      std::vector<double> kept_weights;
      for (Eigen::Index a = 0; a < k; ++a) {
        if (weights[a] > 1e-14) {
          kept.push_back(corral[a]);
          kept_weights.push_back(weights[a]);
        }
      }
      if (kept.empty()) {
        kept.push_back(corral.back());
        kept_weights.push_back(1.0);
      }
      const double total = std::accumulate(kept_weights.begin(), kept_weights.end(), 0.0);
      for (double& w : kept_weights) w /= total;
      corral = std::move(kept);
      weights = std::move(kept_weights);
    }
    x = Vec::Zero(points.front().size());
    for (std::size_t a = 0; a < corral.size(); ++a) x += weights[a] * points[corral[a]];
    if (x.squaredNorm() <= 1e-30 * max_norm2) break;
  }
  return x.norm();
}

double optimality_certificate(const RadiusSolution& solution, const Anisotropy& gamma) {
  std::vector<Vec> gradients;
  gradients.reserve(solution.active_nodes.size());
  for (std::size_t i : solution.active_nodes) {
    const Vec& nu = solution.dual_directions[i];
    gradients.push_back(-nu / gamma.value(nu));
  }
  if (gradients.empty()) return std::numeric_limits<double>::infinity();
  return hull_distance_to_origin(gradients);
}

}  // namespace aniso
