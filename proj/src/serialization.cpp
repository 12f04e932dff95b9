#include "aniso/serialization.hpp"

#include <sstream>

namespace aniso {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string type_name(const json& j) { return j.type_name(); }

ordered_json vec_json(const Vec& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

std::vector<HarmonicTerm> terms_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array, got " + type_name(j));
  std::vector<HarmonicTerm> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string item = path + "/" + std::to_string(i);
    if (!j[i].is_object()) throw ConfigError(item, "expected an object");
    ObjectReader r(j[i], item);
    HarmonicTerm t;
    t.degree = r.integer("degree");
    t.order = r.integer("order", 0);
    t.coefficient = r.number("coefficient");
    r.finish();
    if (t.degree < 0) throw ConfigError(r.path_of("degree"), "must be >= 0");
    out.push_back(t);
  }
  return out;
}

ordered_json terms_json(const std::vector<HarmonicTerm>& terms) {
  ordered_json a = ordered_json::array();
  for (const auto& t : terms) {
    a.push_back({{"degree", t.degree}, {"order", t.order}, {"coefficient", t.coefficient}});
  }
  return a;
}

Vec optional_center(ObjectReader& r, int n) {
  if (r.has("center")) return r.vector("center", n + 1);
  return Vec::Zero(n + 1);
}

}  // namespace

ObjectReader::ObjectReader(const json& object, std::string path)
    : object_(object), path_(std::move(path)) {
  if (!object_.is_object()) throw ConfigError(path_, "expected an object, got " + type_name(object_));
}

bool ObjectReader::has(const std::string& key) const { return object_.contains(key); }

const json& ObjectReader::raw(const std::string& key) {
  const auto it = object_.find(key);
  if (it == object_.end()) throw ConfigError(path_of(key), "missing required field");
  used_.insert(key);
  return *it;
}

double ObjectReader::number(const std::string& key) {
  const json& v = raw(key);
  if (!v.is_number()) throw ConfigError(path_of(key), "expected a number, got " + type_name(v));
  return v.get<double>();
}

double ObjectReader::number(const std::string& key, double fallback) {
  return has(key) ? number(key) : fallback;
}

int ObjectReader::integer(const std::string& key) {
  const json& v = raw(key);
  if (!v.is_number_integer()) throw ConfigError(path_of(key), "expected an integer, got " + type_name(v));
  return v.get<int>();
}

int ObjectReader::integer(const std::string& key, int fallback) {
  return has(key) ? integer(key) : fallback;
}

bool ObjectReader::boolean(const std::string& key, bool fallback) {
  if (!has(key)) return fallback;
  const json& v = raw(key);
  if (!v.is_boolean()) throw ConfigError(path_of(key), "expected a boolean, got " + type_name(v));
  return v.get<bool>();
}

std::string ObjectReader::string(const std::string& key) {
  const json& v = raw(key);
  if (!v.is_string()) throw ConfigError(path_of(key), "expected a string, got " + type_name(v));
  return v.get<std::string>();
}

std::string ObjectReader::string(const std::string& key, const std::string& fallback) {
  return has(key) ? string(key) : fallback;
}

std::vector<double> ObjectReader::numbers(const std::string& key) {
  const json& v = raw(key);
  if (!v.is_array()) throw ConfigError(path_of(key), "expected an array, got " + type_name(v));
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw ConfigError(path_of(key) + "/" + std::to_string(i), "expected a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

Vec ObjectReader::vector(const std::string& key, int size) {
  const std::vector<double> v = numbers(key);
  if (static_cast<int>(v.size()) != size) {
    std::ostringstream msg;
    msg << "expected " << size << " entries, got " << v.size();
    throw ConfigError(path_of(key), msg.str());
  }
  Vec out(size);
  for (int i = 0; i < size; ++i) out(i) = v[i];
  return out;
}

void ObjectReader::finish() const {
  for (auto it = object_.begin(); it != object_.end(); ++it) {
    if (!used_.count(it.key())) throw ConfigError(path_of(it.key()), "unknown field");
  }
}

AnisotropySpec anisotropy_from_json(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  AnisotropySpec spec;
  spec.n = r.integer("n");
  if (spec.n != 1 && spec.n != 2) throw ConfigError(r.path_of("n"), "must be 1 or 2");
  const std::string family = r.string("family");
  const int dim = spec.n + 1;
  if (family == "isotropic") {
    spec.family = Isotropic{};
  } else if (family == "ellipsoid") {
    const json& q = r.raw("Q");
    const std::string qpath = r.path_of("Q");
    if (!q.is_array() || static_cast<int>(q.size()) != dim) {
      throw ConfigError(qpath, "expected " + std::to_string(dim) + " rows");
    }
    Mat m(dim, dim);
    for (int i = 0; i < dim; ++i) {
      const std::string row = qpath + "/" + std::to_string(i);
      if (!q[i].is_array() || static_cast<int>(q[i].size()) != dim) {
        throw ConfigError(row, "expected " + std::to_string(dim) + " numbers");
      }
      for (int k = 0; k < dim; ++k) {
        if (!q[i][k].is_number()) throw ConfigError(row + "/" + std::to_string(k), "expected a number");
        m(i, k) = q[i][k].get<double>();
      }
    }
    spec.family = Ellipsoid{m};
  } else if (family == "smoothed_lp") {
    SmoothedLp f;
    f.exponent = r.number("exponent", f.exponent);
    f.regularizer = r.number("regularizer", f.regularizer);
    spec.family = f;
  } else if (family == "harmonic_perturbation") {
    HarmonicPerturbation f;
    f.base_radius = r.number("base_radius", f.base_radius);
    f.amplitude = r.number("amplitude");
    f.degree = r.integer("degree", f.degree);
    f.order = r.integer("order", f.order);
    spec.family = f;
  } else {
    throw ConfigError(r.path_of("family"),
                      "unknown family '" + family +
                          "' (isotropic, ellipsoid, smoothed_lp, harmonic_perturbation)");
  }
  r.finish();
  return spec;
}

ordered_json to_json(const AnisotropySpec& spec) {
  ordered_json j;
  j["family"] = spec.family_name();
  j["n"] = spec.n;
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Ellipsoid>) {
          ordered_json rows = ordered_json::array();
          for (Eigen::Index i = 0; i < f.Q.rows(); ++i) rows.push_back(vec_json(f.Q.row(i).transpose()));
          j["Q"] = rows;
        } else if constexpr (std::is_same_v<T, SmoothedLp>) {
          j["exponent"] = f.exponent;
          j["regularizer"] = f.regularizer;
        } else if constexpr (std::is_same_v<T, HarmonicPerturbation>) {
          j["base_radius"] = f.base_radius;
          j["amplitude"] = f.amplitude;
          j["degree"] = f.degree;
          j["order"] = f.order;
        }
      },
      spec.family);
  return j;
}

SurfaceSpec surface_from_json(const json& j, int n, const std::string& path) {
  ObjectReader r(j, path);
  const std::string kind = r.string("kind");
  SurfaceSpec spec;
  if (kind == "wulff_shape") {
    WulffShape w;
    w.scale = r.number("scale", 1.0);
    w.center = optional_center(r, n);
    if (r.has("modulation")) w.modulation = terms_from_json(r.raw("modulation"), r.path_of("modulation"));
    if (!(w.scale > 0.0)) throw ConfigError(r.path_of("scale"), "must be > 0");
    spec.kind = w;
  } else if (kind == "round_sphere") {
    RoundSphere s;
    s.radius = r.number("radius", 1.0);
    s.center = optional_center(r, n);
    if (!(s.radius > 0.0)) throw ConfigError(r.path_of("radius"), "must be > 0");
    spec.kind = s;
  } else if (kind == "ellipsoid") {
    EllipsoidSurface e;
    e.semi_axes = r.vector("semi_axes", n + 1);
    e.center = optional_center(r, n);
    if (!(e.semi_axes.minCoeff() > 0.0)) throw ConfigError(r.path_of("semi_axes"), "entries must be > 0");
    spec.kind = e;
  } else if (kind == "radial_graph") {
    RadialGraph g;
    g.base_radius = r.number("base_radius", 1.0);
    g.center = optional_center(r, n);
    if (r.has("terms")) g.terms = terms_from_json(r.raw("terms"), r.path_of("terms"));
    if (!(g.base_radius > 0.0)) throw ConfigError(r.path_of("base_radius"), "must be > 0");
    spec.kind = g;
  } else {
    throw ConfigError(r.path_of("kind"),
                      "unknown kind '" + kind + "' (wulff_shape, round_sphere, ellipsoid, radial_graph)");
  }
  r.finish();
  return spec;
}

ordered_json to_json(const SurfaceSpec& spec) {
  ordered_json j;
  j["kind"] = spec.kind_name();
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, WulffShape>) {
          j["scale"] = k.scale;
          j["center"] = vec_json(k.center);
          j["modulation"] = terms_json(k.modulation);
        } else if constexpr (std::is_same_v<T, RoundSphere>) {
          j["radius"] = k.radius;
          j["center"] = vec_json(k.center);
        } else if constexpr (std::is_same_v<T, EllipsoidSurface>) {
          j["semi_axes"] = vec_json(k.semi_axes);
          j["center"] = vec_json(k.center);
        } else {
          j["base_radius"] = k.base_radius;
          j["center"] = vec_json(k.center);
          j["terms"] = terms_json(k.terms);
        }
      },
      spec.kind);
  return j;
}

ordered_json to_json(const VerificationReport& r) {
  ordered_json j;
  j["schema_version"] = VerificationReport::kSchemaVersion;
  j["n"] = r.n;
  j["resolution"] = r.resolution;
  j["gamma_family"] = r.gamma_family;
  j["surface_kind"] = r.surface_kind;
  j["node_count"] = r.node_count;

  j["surface_energy"] = r.surface_energy;
  j["volume"] = r.volume;
  j["lambda"] = r.lambda;
  j["center_of_mass"] = vec_json(r.center_of_mass);
  j["center"] = vec_json(r.center);
  j["radius"] = r.radius;
  j["radius_converged"] = r.radius_converged;
  j["radius_gap"] = r.radius_gap;
  j["optimality_certificate"] = r.optimality_certificate;

  j["hm_residual"] = r.hm_residual;
  j["hk_product_l2"] = r.hk_product_l2;
  j["hk_product_inf"] = r.hk_product_inf;
  j["h_gamma_l2"] = r.h_gamma_l2;
  j["h_gamma_inf"] = r.h_gamma_inf;
  j["pinching_p"] = r.pinching_p;
  j["pinching_epsilon"] = r.pinching_epsilon;
  j["radius_deviation"] = r.radius_deviation;
  auto map_json = [](const std::map<double, double>& m) {
    ordered_json a = ordered_json::array();
    for (const auto& [k, v] : m) a.push_back({{"r", k}, {"value", v}});
    return a;
  };
  j["mc_deviation"] = map_json(r.mc_deviation);
  j["mc_deviation_abs"] = map_json(r.mc_deviation_abs);
  j["q"] = r.q;
  j["sg_bound"] = r.sg_bound;
  j["a_bound"] = r.a_bound ? ordered_json(*r.a_bound) : ordered_json(nullptr);
  j["sg_bound_exceeds_a"] = r.sg_bound_exceeds_a;
  j["beta"] = r.beta;
  j["alpha"] = r.alpha;
  j["holder_margin"] = r.holder_margin;
  j["pointwise_bound_excess"] = r.pointwise_bound_excess;
  if (r.hausdorff) {
    j["hausdorff"] = {{"distance", r.hausdorff->distance},
                      {"forward", r.hausdorff->forward},
                      {"backward", r.hausdorff->backward},
                      {"sampling_h", r.hausdorff->sampling_h},
                      {"resolution", r.hausdorff->resolution}};
  } else {
    j["hausdorff"] = nullptr;
  }
  if (r.error_estimates) {
    const auto& e = *r.error_estimates;
    j["error_estimates"] = {{"coarse_resolution", e.coarse_resolution},
                            {"hm_residual", e.hm_residual},
                            {"hk_product_l2", e.hk_product_l2},
                            {"hk_product_inf", e.hk_product_inf},
                            {"pinching_epsilon", e.pinching_epsilon}};
  } else {
    j["error_estimates"] = nullptr;
  }
  j["wulff_curvature_error"] =
      r.wulff_curvature_error ? ordered_json(*r.wulff_curvature_error) : ordered_json(nullptr);
  return j;
}

}  // namespace aniso
