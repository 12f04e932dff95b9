#include "aniso/surface.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace aniso {

namespace {

Vec checked_center(const Vec& c, int dim, const char* what) {
  if (c.size() == 0) return Vec::Zero(dim);
  if (c.size() != dim) {
    throw std::invalid_argument(std::string(what) + ": center has dimension " +
                                std::to_string(c.size()) + ", expected " + std::to_string(dim));
  }
  return c;
}

}  // namespace

std::string SurfaceSpec::kind_name() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, WulffShape>) return "wulff_shape";
        if constexpr (std::is_same_v<T, RoundSphere>) return "round_sphere";
        if constexpr (std::is_same_v<T, EllipsoidSurface>) return "ellipsoid";
        if constexpr (std::is_same_v<T, RadialGraph>) return "radial_graph";
      },
      kind);
}

Vec SurfaceSpec::center(int ambient_dim) const {
  return std::visit([&](const auto& k) { return checked_center(k.center, ambient_dim, "surface"); },
                    kind);
}

Parametrization::Parametrization(const SurfaceSpec& spec, const Anisotropy& gamma)
    : spec_(spec), gamma_(&gamma), n_(gamma.n()) {
  const int dim = n_ + 1;
  center_ = spec_.center(dim);
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, WulffShape>) {
          if (!(k.scale > 0.0)) throw std::invalid_argument("wulff_shape: scale must be > 0");
          series_ = HarmonicSeries(n_, 1.0, k.modulation);
        } else if constexpr (std::is_same_v<T, RoundSphere>) {
          if (!(k.radius > 0.0)) throw std::invalid_argument("round_sphere: radius must be > 0");
        } else if constexpr (std::is_same_v<T, EllipsoidSurface>) {
          if (k.semi_axes.size() != dim || !(k.semi_axes.minCoeff() > 0.0)) {
            throw std::invalid_argument("ellipsoid: need n+1 positive semi-axes");
          }
        } else {
          if (!(k.base_radius > 0.0)) {
            throw std::invalid_argument("radial_graph: base_radius must be > 0");
          }
          series_ = HarmonicSeries(n_, k.base_radius, k.terms);
        }
      },
      spec_.kind);
}

Vec Parametrization::position(const Vec& u) const {
  return std::visit(
      [&](const auto& k) -> Vec {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, WulffShape>) {
          return center_ + k.scale * series_.value(u) * gamma_->gradient(u);
        } else if constexpr (std::is_same_v<T, RoundSphere>) {
          return center_ + k.radius * u;
        } else if constexpr (std::is_same_v<T, EllipsoidSurface>) {
          return center_ + k.semi_axes.cwiseProduct(u);
        } else {
          return center_ + series_.value(u) * u;
        }
      },
      spec_.kind);
}

ChartJet Parametrization::jet(const Vec& u, const Mat& frame, bool second_derivatives) const {
  const auto dim = u.size();
  const int n = n_;
  ChartJet out;
  out.tangents.resize(dim, n);

  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, WulffShape>) {
          const ScalarJet g = gamma_->jet(u);
          const ScalarJet m = series_.jet(u);
          const double r = k.scale;
          out.position = center_ + r * m.value * g.gradient;
          for (int i = 0; i < n; ++i) {
            const Vec e = frame.col(i);
            out.tangents.col(i) = r * (m.gradient.dot(e) * g.gradient + m.value * g.hessian * e);
          }
          if (!second_derivatives) return;
          std::array<Mat, 2> third;
          for (int i = 0; i < n; ++i) third[i] = gamma_->third_derivative(u, frame.col(i));
          for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
              const Vec ei = frame.col(i);
              const Vec ej = frame.col(j);
              const Vec v = r * (ei.dot(m.hessian * ej) * g.gradient +
                                 m.gradient.dot(ei) * (g.hessian * ej) +
                                 m.gradient.dot(ej) * (g.hessian * ei) +
                                 m.value * 0.5 * (third[i] * ej + third[j] * ei));
              out.second[i][j] = v;
              out.second[j][i] = v;
            }
          }
        } else if constexpr (std::is_same_v<T, RoundSphere>) {
          out.position = center_ + k.radius * u;
          out.tangents = k.radius * frame;
          if (!second_derivatives) return;
          for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) out.second[i][j] = (i == j ? -k.radius : 0.0) * u;
          }
        } else if constexpr (std::is_same_v<T, EllipsoidSurface>) {
          out.position = center_ + k.semi_axes.cwiseProduct(u);
          for (int i = 0; i < n; ++i) out.tangents.col(i) = k.semi_axes.cwiseProduct(frame.col(i));
          if (!second_derivatives) return;
          for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
              out.second[i][j] = (i == j ? -1.0 : 0.0) * k.semi_axes.cwiseProduct(u);
            }
          }
        } else {
          const ScalarJet rho = series_.jet(u);
          out.position = center_ + rho.value * u;
          for (int i = 0; i < n; ++i) {
            const Vec e = frame.col(i);
            out.tangents.col(i) = rho.gradient.dot(e) * u + rho.value * e;
          }
          if (!second_derivatives) return;
          for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
              const Vec ei = frame.col(i);
              const Vec ej = frame.col(j);
              out.second[i][j] = ei.dot(rho.hessian * ej) * u + rho.gradient.dot(ei) * ej +
                                 rho.gradient.dot(ej) * ei - (i == j ? rho.value : 0.0) * u;
            }
          }
        }
      },
      spec_.kind);
  return out;
}

std::vector<Vec> SampledSurface::positions() const {
  std::vector<Vec> out;
  out.reserve(nodes.size());
  for (const auto& node : nodes) out.push_back(node.position);
  return out;
}

std::vector<double> SampledSurface::aniso_mean_curvatures() const {
  std::vector<double> out;
  out.reserve(nodes.size());
  for (const auto& node : nodes) out.push_back(node.aniso_mean_curvature);
  return out;
}

SampledSurface sample_surface(const SurfaceSpec& spec, const Anisotropy& gamma,
                              const SphereGrid& grid) {
  if (grid.n != gamma.n()) {
    throw std::invalid_argument("sample_surface: grid and anisotropy dimensions differ");
  }
  const Parametrization param(spec, gamma);
  const int n = grid.n;
  const Vec center = spec.center(n + 1);

  SampledSurface out;
  out.n = n;
  out.resolution = grid.resolution;
  out.spec = spec;
  out.gamma_spec = gamma.spec();
  out.nodes.resize(grid.size());

  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vec& u = grid.nodes[k];
    const Mat frame = tangent_basis(u);
    const ChartJet jet = param.jet(u, frame);

    const Mat& t = jet.tangents;
    const Mat metric = t.transpose() * t;
    const double det = metric.determinant();
    if (!(det > 0.0) || !std::isfinite(det)) {
      std::ostringstream msg;
      msg << "sample_surface: degenerate metric (det g = " << det << ") at node " << k
          << ", u = " << u.transpose();
      throw std::domain_error(msg.str());
    }

    if (!((jet.position - center).dot(u) > 0.0)) {
      std::ostringstream msg;
      msg << "sample_surface: surface is not star-shaped about its center at node " << k
          << ", u = " << u.transpose();
      throw std::domain_error(msg.str());
    }

    Vec normal = orthogonal_complement(t);
    if (normal.dot(u) > 0.0) normal = -normal;

    const Mat lower = metric.llt().matrixL();
    const Mat lower_inv = lower.inverse();
    const Mat frame_on_surface = t * lower_inv.transpose();

    Mat second_form(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) second_form(i, j) = -normal.dot(jet.second[i][j]);
    }
    Mat shape = lower_inv * second_form * lower_inv.transpose();
    shape = 0.5 * (shape + shape.transpose());

    const Vec outward = -normal;
    const Mat a = gamma.a_gamma_in(outward, frame_on_surface);
    const Mat aniso = a * shape;

    SurfaceNode& node = out.nodes[k];
    node.parameter = u;
    node.position = jet.position;
    node.normal = normal;
    node.area_weight = grid.weights[k] * std::sqrt(det);
    node.shape = TangentOperator{normal, shape, frame_on_surface};
    node.aniso_shape = TangentOperator{normal, aniso, frame_on_surface};
    node.mean_curvature = -shape.trace() / n;
    node.aniso_mean_curvature = -aniso.trace() / n;
    node.gamma_normal = gamma.value(outward);
    node.s_gamma_frobenius = aniso.norm();
  }
  return out;
}

double surface_energy(const SampledSurface& s) {
  double sum = 0.0;
  for (const auto& node : s.nodes) sum += node.gamma_normal * node.area_weight;
  return sum;
}

double surface_volume(const SampledSurface& s) {
  double sum = 0.0;
  for (const auto& node : s.nodes) sum += node.area_weight;
  return sum;
}

double integrate(const SampledSurface& s, std::span<const double> f) {
  if (f.size() != s.size()) throw std::invalid_argument("integrate: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * s.nodes[i].area_weight;
  return sum;
}

double lp_norm(const SampledSurface& s, std::span<const double> f, double p) {
  if (f.size() != s.size()) throw std::invalid_argument("lp_norm: size mismatch");
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
  }
  double sum = 0.0;
  double energy = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double w = s.nodes[i].gamma_normal * s.nodes[i].area_weight;
    energy += w;
    const double a = std::abs(f[i]);
    sum += (p == 1.0 ? a : p == 2.0 ? a * a : std::pow(a, p)) * w;
  }
  const double mean = sum / energy;
  return p == 1.0 ? mean : p == 2.0 ? std::sqrt(mean) : std::pow(mean, 1.0 / p);
}

Vec center_of_mass(const SampledSurface& s) {
  Vec sum = Vec::Zero(s.n + 1);
  double volume = 0.0;
  for (const auto& node : s.nodes) {
    sum += node.area_weight * node.position;
    volume += node.area_weight;
  }
  return sum / volume;
}

void write_nodes_csv(const SampledSurface& s, std::ostream& out) {
  const int dim = s.n + 1;
  for (int i = 0; i < dim; ++i) out << "x" << i << ",";
  for (int i = 0; i < dim; ++i) out << "normal" << i << ",";
  out << "H,H_gamma,S_gamma_frobenius,area_weight\n";
  out << std::setprecision(17);
  for (const auto& node : s.nodes) {
    for (int i = 0; i < dim; ++i) out << node.position(i) << ",";
    for (int i = 0; i < dim; ++i) out << node.normal(i) << ",";
    out << node.mean_curvature << "," << node.aniso_mean_curvature << ","
        << node.s_gamma_frobenius << "," << node.area_weight << "\n";
  }
}

}  // namespace aniso
