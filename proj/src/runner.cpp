#include "aniso/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace aniso {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

// Builds the anisotropy and surface and checks that they are usable.
std::pair<AnisotropySpec, SurfaceSpec> build_specs(const json& doc) {
  const AnisotropySpec a = anisotropy_from_json(doc.at("anisotropy"), "/anisotropy");
  const SurfaceSpec s = surface_from_json(doc.at("surface"), a.n, "/surface");
  try {
    const Anisotropy gamma(a);
  } catch (const std::exception& e) {
    throw ConfigError("/anisotropy", e.what());
  }
  return {a, s};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
}

std::string cell_name(const RunConfig& config, std::size_t sweep_index, int resolution) {
  std::string name = "report";
  if (config.sweep) name += "_s" + std::to_string(sweep_index);
  return name + "_r" + std::to_string(resolution) + ".json";
}

ordered_json tolerances_json(const RunConfig& c) {
  return {{"hk_product", c.hk_tolerance},
          {"hm_residual", c.hm_tolerance},
          {"holder_margin", 1e-9},
          {"pointwise_bound", 1e-8}};
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err, bool quiet,
            std::vector<Cell>* cells_out) {
  namespace fs = std::filesystem;
  fs::create_directories(config.output_dir);

  std::vector<std::optional<double>> values;
  if (config.sweep) {
    for (double v : config.sweep->values) values.emplace_back(v);
  } else {
    values.emplace_back(std::nullopt);
  }

  std::vector<Cell> cells;
  for (std::size_t si = 0; si < values.size(); ++si) {
    const auto [gamma, surface] = materialize(config, values[si]);
    for (int res : config.resolutions) {
      ReportOptions opt;
      opt.p = config.p;
      opt.q = config.q;
      opt.r_values = config.r_values;
      opt.resolution = res;
      opt.estimate_error = config.error_estimates;
      opt.compute_hausdorff = config.hausdorff;
      opt.hausdorff_oversample = config.hausdorff_oversample;
      opt.a_bound = config.a_bound;

      Cell cell;
      cell.sweep_value = values[si];
      cell.resolution = res;
      cell.report = full_report(gamma, surface, opt);
      cell.violations = check_invariants(cell.report, config);
      cell.file = cell_name(config, si, res);

      ordered_json j = to_json(cell.report);
      j["anisotropy"] = to_json(gamma);
      j["surface"] = to_json(surface);
      j["seed"] = config.seed;
      j["tolerances"] = tolerances_json(config);
      if (config.sweep) {
        j["sweep"] = {{"parameter", config.sweep->parameter}, {"value", *values[si]}};
      } else {
        j["sweep"] = nullptr;
      }
      write_file(fs::path(config.output_dir) / cell.file, j.dump(2) + "\n");

      if (!quiet) {
        out << cell.file << ": resolution " << res;
        if (cell.sweep_value) out << ", value " << short_fmt(*cell.sweep_value);
        out << ", hk_l2 " << fmt(cell.report.hk_product_l2) << ", epsilon "
            << short_fmt(cell.report.pinching_epsilon) << ", hm " << short_fmt(cell.report.hm_residual)
            << (cell.violations.empty() ? "  ok" : "  VIOLATION") << "\n";
        if (cell.report.sg_bound_exceeds_a) {
          out << "  note: sg_bound " << short_fmt(cell.report.sg_bound) << " exceeds A = "
              << short_fmt(*cell.report.a_bound) << "\n";
        }
      }
      cells.push_back(std::move(cell));
    }
  }

  if (config.sweep) {
    std::ostringstream csv;
    csv << "value,resolution,pinching_epsilon,radius_deviation";
    for (double r : config.r_values) csv << ",mc_deviation_r" << short_fmt(r);
    for (double r : config.r_values) csv << ",mc_deviation_abs_r" << short_fmt(r);
    csv << ",hausdorff,hk_product_l2,hk_product_inf,hm_residual,radius,h_gamma_l2\n";
    for (const Cell& c : cells) {
      const VerificationReport& r = c.report;
      csv << fmt(*c.sweep_value) << "," << c.resolution << "," << fmt(r.pinching_epsilon) << ","
          << fmt(r.radius_deviation);
      for (double rv : config.r_values) csv << "," << fmt(r.mc_deviation.at(rv));
      for (double rv : config.r_values) csv << "," << fmt(r.mc_deviation_abs.at(rv));
      csv << "," << (r.hausdorff ? fmt(r.hausdorff->distance) : std::string()) << ","
          << fmt(r.hk_product_l2) << "," << fmt(r.hk_product_inf) << "," << fmt(r.hm_residual) << ","
          << fmt(r.radius) << "," << fmt(r.h_gamma_l2) << "\n";
    }
    write_file(fs::path(config.output_dir) / "sweep.csv", csv.str());
  }

  bool failed = false;
  for (const Cell& c : cells) {
    if (c.violations.empty()) continue;
    if (!failed) err << "--- expected\n+++ actual\n";
    failed = true;
    err << "@@ " << c.file << " @@\n";
    for (const Violation& v : c.violations) {
      err << "-" << v.quantity << " " << v.expected << "\n";
      err << "+" << v.quantity << " = " << v.actual << "\n";
    }
  }
  if (cells_out) *cells_out = std::move(cells);
  return failed ? 2 : 0;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", "JSON syntax error at " + line_column(text, e.byte) + ": " + e.what());
  }

  RunConfig c;
  ObjectReader r(doc, "");
  const int version = r.integer("schema_version");
  if (version != RunConfig::kSchemaVersion) {
    throw ConfigError("/schema_version", "unsupported version " + std::to_string(version) +
                                              " (expected " + std::to_string(RunConfig::kSchemaVersion) + ")");
  }
  r.raw("anisotropy");
  r.raw("surface");
  std::tie(c.anisotropy, c.surface) = build_specs(doc);
  const int n = c.anisotropy.n;

  c.p = r.number("p", c.p);
  c.q = r.number("q", c.q);
  if (r.has("r_values")) c.r_values = r.numbers("r_values");
  if (r.has("resolutions")) {
    c.resolutions.clear();
    const json& v = r.raw("resolutions");
    if (!v.is_array()) throw ConfigError("/resolutions", "expected an array of integers");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number_integer()) {
        throw ConfigError("/resolutions/" + std::to_string(i), "expected an integer");
      }
      c.resolutions.push_back(v[i].get<int>());
    }
  }
  c.output_dir = r.string("output_dir", c.output_dir);
  if (r.has("seed")) {
    const json& v = r.raw("seed");
    if (!v.is_number_unsigned()) throw ConfigError("/seed", "expected a non-negative integer");
    c.seed = v.get<std::uint64_t>();
  }
  if (r.has("a_bound")) c.a_bound = r.number("a_bound");
  c.hm_tolerance = r.number("hm_tolerance", c.hm_tolerance);
  c.hk_tolerance = r.number("hk_tolerance", c.hk_tolerance);
  c.hausdorff = r.boolean("hausdorff", c.hausdorff);
  c.hausdorff_oversample = r.integer("hausdorff_oversample", c.hausdorff_oversample);
  c.error_estimates = r.boolean("error_estimates", c.error_estimates);
  if (r.has("sweep")) {
    ObjectReader s(r.raw("sweep"), "/sweep");
    SweepSpec sw;
    sw.parameter = s.string("parameter");
    sw.values = s.numbers("values");
    s.finish();
    c.sweep = sw;
  }
  r.finish();

  if (!(c.p > 2.0)) throw ConfigError("/p", "p = " + short_fmt(c.p) + " violates p > 2");
  if (!(c.q > n)) {
    throw ConfigError("/q", "q = " + short_fmt(c.q) + " violates q > n (n = " + std::to_string(n) + ")");
  }
  if (c.r_values.empty()) throw ConfigError("/r_values", "must not be empty");
  for (std::size_t i = 0; i < c.r_values.size(); ++i) {
    const double rv = c.r_values[i];
    if (!(rv >= 1.0 && rv < c.p)) {
      throw ConfigError("/r_values/" + std::to_string(i),
                        "r = " + short_fmt(rv) + " violates 1 <= r < p (p = " + short_fmt(c.p) + ")");
    }
  }
  if (c.resolutions.empty()) throw ConfigError("/resolutions", "must not be empty");
  for (std::size_t i = 0; i < c.resolutions.size(); ++i) {
    if (c.resolutions[i] < 8) {
      throw ConfigError("/resolutions/" + std::to_string(i), "resolution must be >= 8");
    }
    if (i > 0 && c.resolutions[i] <= c.resolutions[i - 1]) {
      throw ConfigError("/resolutions/" + std::to_string(i), "resolutions must be strictly increasing");
    }
  }
  if (!(c.hm_tolerance > 0.0)) throw ConfigError("/hm_tolerance", "must be > 0");
  if (!(c.hk_tolerance >= 0.0)) throw ConfigError("/hk_tolerance", "must be >= 0");
  if (c.hausdorff_oversample < 1) throw ConfigError("/hausdorff_oversample", "must be >= 1");
  if (c.output_dir.empty()) throw ConfigError("/output_dir", "must not be empty");

  c.document = doc;
  if (c.sweep) {
    const std::string& ptr = c.sweep->parameter;
    if (ptr.rfind("/anisotropy/", 0) != 0 && ptr.rfind("/surface/", 0) != 0) {
      throw ConfigError("/sweep/parameter", "must point into /anisotropy or /surface");
    }
    json::json_pointer jp;
    try {
      jp = json::json_pointer(ptr);
    } catch (const json::exception& e) {
      throw ConfigError("/sweep/parameter", std::string("invalid JSON pointer: ") + e.what());
    }
    if (!doc.contains(jp) || !doc.at(jp).is_number()) {
      throw ConfigError("/sweep/parameter", "'" + ptr + "' does not name a numeric field");
    }
    if (c.sweep->values.empty()) throw ConfigError("/sweep/values", "must not be empty");
    for (std::size_t i = 0; i < c.sweep->values.size(); ++i) {
      try {
        materialize(c, c.sweep->values[i]);
      } catch (const ConfigError& e) {
        throw ConfigError("/sweep/values/" + std::to_string(i), e.what());
      }
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("", "cannot read config file " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str());
}

std::pair<AnisotropySpec, SurfaceSpec> materialize(const RunConfig& config, std::optional<double> value) {
  if (!value || !config.sweep) return {config.anisotropy, config.surface};
  json doc = config.document;
  const json::json_pointer jp(config.sweep->parameter);
  if (doc.at(jp).is_number_integer()) {
    if (std::floor(*value) != *value) {
      throw ConfigError(config.sweep->parameter, "integer field swept with non-integer " + short_fmt(*value));
    }
    doc[jp] = static_cast<std::int64_t>(*value);
  } else {
    doc[jp] = *value;
  }
  return build_specs(doc);
}

std::vector<Violation> check_invariants(const VerificationReport& r, const RunConfig& c) {
  std::vector<Violation> v;
  const double floor = 1.0 - c.hk_tolerance;
  if (!(r.hk_product_l2 >= floor)) v.push_back({"hk_product_l2", ">= " + fmt(floor), fmt(r.hk_product_l2)});
  if (!(r.hk_product_inf >= floor)) v.push_back({"hk_product_inf", ">= " + fmt(floor), fmt(r.hk_product_inf)});
  if (!(r.hm_residual <= c.hm_tolerance)) {
    v.push_back({"hm_residual", "<= " + fmt(c.hm_tolerance), fmt(r.hm_residual)});
  }
  if (!(r.holder_margin <= 1e-9)) v.push_back({"holder_margin", "<= 1e-09", fmt(r.holder_margin)});
  if (!(r.pointwise_bound_excess <= 1e-8)) {
    v.push_back({"pointwise_bound_excess", "<= 1e-08", fmt(r.pointwise_bound_excess)});
  }
  if (!r.radius_converged) v.push_back({"radius_converged", "true", "false"});
  return v;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err, bool quiet, std::vector<Cell>* cells) {
  return execute(config, out, err, quiet, cells);
}

int sweep(const RunConfig& config, std::ostream& out, std::ostream& err, bool quiet,
          std::vector<Cell>* cells) {
  if (!config.sweep) throw ConfigError("/sweep", "the sweep command requires a sweep section");
  return execute(config, out, err, quiet, cells);
}

std::vector<OrderRow> observed_orders(const std::string& scalar, const std::vector<int>& resolutions,
                                      const std::vector<std::optional<double>>& errors, double floor) {
  std::vector<OrderRow> rows;
  for (std::size_t k = 0; k + 1 < resolutions.size(); ++k) {
    OrderRow row;
    row.scalar = scalar;
    row.coarse_resolution = resolutions[k];
    row.fine_resolution = resolutions[k + 1];
    row.coarse_error = errors[k];
    row.fine_error = errors[k + 1];
    if (!errors[k] || !errors[k + 1]) {
      row.status = "n/a";
    } else if (*errors[k + 1] <= floor) {
      row.status = "floor";
    } else if (!(*errors[k + 1] < *errors[k])) {
      row.status = "n/a";
    } else {
      row.order = std::log(*errors[k] / *errors[k + 1]) /
                  std::log(static_cast<double>(resolutions[k + 1]) / resolutions[k]);
      row.status = "ok";
    }
    rows.push_back(row);
  }
  return rows;
}

int study(const RunConfig& config, std::ostream& out, std::ostream&, bool quiet, std::vector<OrderRow>* rows_out) {
  namespace fs = std::filesystem;
  if (config.resolutions.size() < 3) {
    throw ConfigError("/resolutions", "a refinement study needs at least 3 resolutions");
  }
  fs::create_directories(config.output_dir);

  const auto* wulff = std::get_if<WulffShape>(&config.surface.kind);
  const bool exact_wulff = wulff && wulff->modulation.empty();

  std::vector<std::optional<double>> hm, hk, hg;
  for (int res : config.resolutions) {
    ReportOptions opt;
    opt.p = config.p;
    opt.q = config.q;
    opt.r_values = config.r_values;
    opt.resolution = res;
    opt.estimate_error = false;
    opt.compute_hausdorff = false;
    const VerificationReport r = full_report(config.anisotropy, config.surface, opt);
    hm.emplace_back(r.hm_residual);
    if (exact_wulff) {
      hk.emplace_back(std::abs(r.hk_product_l2 - 1.0));
    } else {
      hk.emplace_back(std::nullopt);
    }
    hg.push_back(r.wulff_curvature_error);
  }

  std::vector<OrderRow> rows = observed_orders("hm_residual", config.resolutions, hm, kHmResidualFloor);
  for (auto& row : observed_orders("hk_product_l2_minus_1", config.resolutions, hk, kHkProductFloor)) {
    rows.push_back(row);
  }
  for (auto& row : observed_orders("h_gamma_max_error", config.resolutions, hg, kWulffCurvatureFloor)) {
    rows.push_back(row);
  }

  auto opt_json = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  auto opt_csv = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string("n/a"); };

  ordered_json j;
  j["schema_version"] = RunConfig::kSchemaVersion;
  j["anisotropy"] = to_json(config.anisotropy);
  j["surface"] = to_json(config.surface);
  j["resolutions"] = config.resolutions;
  j["floors"] = {{"hm_residual", kHmResidualFloor},
                 {"hk_product_l2_minus_1", kHkProductFloor},
                 {"h_gamma_max_error", kWulffCurvatureFloor}};
  ordered_json errs;
  auto series = [&](const std::vector<std::optional<double>>& e) {
    ordered_json a = ordered_json::array();
    for (const auto& v : e) a.push_back(opt_json(v));
    return a;
  };
  errs["hm_residual"] = series(hm);
  errs["hk_product_l2_minus_1"] = series(hk);
  errs["h_gamma_max_error"] = series(hg);
  j["errors"] = errs;
  ordered_json table = ordered_json::array();
  std::ostringstream csv;
  csv << "scalar,coarse_resolution,fine_resolution,coarse_error,fine_error,order,status\n";
  for (const OrderRow& row : rows) {
    table.push_back({{"scalar", row.scalar},
                     {"coarse_resolution", row.coarse_resolution},
                     {"fine_resolution", row.fine_resolution},
                     {"coarse_error", opt_json(row.coarse_error)},
                     {"fine_error", opt_json(row.fine_error)},
                     {"order", opt_json(row.order)},
                     {"status", row.status}});
    csv << row.scalar << "," << row.coarse_resolution << "," << row.fine_resolution << ","
        << opt_csv(row.coarse_error) << "," << opt_csv(row.fine_error) << "," << opt_csv(row.order) << ","
        << row.status << "\n";
    if (!quiet) {
      out << row.scalar << " " << row.coarse_resolution << "->" << row.fine_resolution << ": "
          << (row.order ? short_fmt(*row.order) : row.status) << "\n";
    }
  }
  j["orders"] = table;
  write_file(fs::path(config.output_dir) / "study.json", j.dump(2) + "\n");
  write_file(fs::path(config.output_dir) / "study.csv", csv.str());
  if (rows_out) *rows_out = std::move(rows);
  return 0;
}

}  // namespace aniso
