#pragma once

#include "aniso/serialization.hpp"
#include "aniso/verify.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace aniso {

struct SweepSpec {
  std::string parameter;  // JSON pointer into the config, e.g. /surface/terms/0/coefficient
  std::vector<double> values;
};

struct RunConfig {
  static constexpr int kSchemaVersion = 1;

  nlohmann::json document;  // the parsed config, used to materialize sweep values
  AnisotropySpec anisotropy;
  SurfaceSpec surface;
  double p = 3.0;
  double q = 4.0;
  std::vector<double> r_values{1.0, 2.0};
  std::vector<int> resolutions{128};
  std::optional<SweepSpec> sweep;
  std::string output_dir = "aniso_out";
  std::uint64_t seed = 0;
  std::optional<double> a_bound;
  double hm_tolerance = 1e-6;
  double hk_tolerance = 1e-6;
  bool hausdorff = true;
  int hausdorff_oversample = 4;
  bool error_estimates = true;
};

/// Parses and validates a config. Syntax errors carry line and column,
/// semantic errors the JSON pointer of the offending field.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Anisotropy and surface with the sweep parameter set to `value`.
std::pair<AnisotropySpec, SurfaceSpec> materialize(const RunConfig& config, std::optional<double> value);

struct Violation {
  std::string quantity;
  std::string expected;
  std::string actual;
};

/// Hard invariants of one report: both products >= 1 - hk_tolerance, HM
/// residual <= hm_tolerance, Hoelder margin <= 1e-9, pointwise bound excess
/// <= 1e-8, radius solver converged.
std::vector<Violation> check_invariants(const VerificationReport& report, const RunConfig& config);

struct Cell {
  std::optional<double> sweep_value;
  int resolution = 0;
  VerificationReport report;
  std::vector<Violation> violations;
  std::string file;
};

/// One report per (sweep value, resolution), written as JSON under
/// output_dir; with a sweep, also sweep.csv. Returns 0 or 2.
int run(const RunConfig& config, std::ostream& out, std::ostream& err, bool quiet,
        std::vector<Cell>* cells = nullptr);

/// Like run, but a sweep is required.
int sweep(const RunConfig& config, std::ostream& out, std::ostream& err, bool quiet,
          std::vector<Cell>* cells = nullptr);

struct OrderRow {
  std::string scalar;
  int coarse_resolution = 0;
  int fine_resolution = 0;
  std::optional<double> coarse_error;
  std::optional<double> fine_error;
  std::optional<double> order;
  /// "ok", "floor" (fine error at or below the sampling floor), "n/a"
  /// (non-monotone or not applicable).
  std::string status;
};

/// Observed orders log(e_k / e_{k+1}) / log(h_k / h_{k+1}) for consecutive
/// refinements. Missing errors give "n/a" rows.
std::vector<OrderRow> observed_orders(const std::string& scalar, const std::vector<int>& resolutions,
                                      const std::vector<std::optional<double>>& errors, double floor);

/// Sampling floors below which a study error counts as converged.
inline constexpr double kHmResidualFloor = 1e-12;
inline constexpr double kHkProductFloor = 1e-12;
inline constexpr double kWulffCurvatureFloor = 1e-11;

/// Refinement study over config.resolutions (at least 3). Writes study.json
/// and study.csv. Returns 0.
int study(const RunConfig& config, std::ostream& out, std::ostream& err, bool quiet,
          std::vector<OrderRow>* rows = nullptr);

}  // namespace aniso
