#ifndef POLYRECUR_EXPERIMENT_HPP
#define POLYRECUR_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyrecur/int_poly.hpp"
#include "polyrecur/recurrence.hpp"

namespace polyrecur {

using ordered_json = nlohmann::ordered_json;

// Experiment plan parsed from a key = value config file. Parsing resolves
// everything up front: unknown keys are errors, polynomials are expanded,
// and grids are validated before any computation starts.
struct ExperimentConfig {
  std::string kind;                 // kronecker | polynomial | system
  std::vector<IntPoly> polys;
  std::vector<std::string> alpha;   // symbol | decimal | "random"
  std::vector<long> n_grid;         // scaling grid (>= 3 strictly increasing)
  long n_single = 0;                // single-shot search bound
  std::uint64_t seed = 0;
  bool require_nonzero = true;
  int workers = 0;                  // 0 = available parallelism
  double tol = 1e-12;
  std::string out_csv;
  std::string out_json;
  std::uint64_t config_hash = 0;    // FNV-1a of the raw config text
  std::string raw_text;

  static ExperimentConfig parse_string(const std::string& text);
  static ExperimentConfig parse_file(const std::string& path);

  ScalingSpec to_scaling_spec() const;
  ordered_json echo() const;  // full resolved plan, embedded in every output
};

struct ExperimentOutput {
  std::string csv;
  ordered_json json;
};

// Scaling run: CSV with one row per grid point plus a JSON sidecar carrying
// the fit, the seed, the precision, and the config echo. Identical config
// and seed give byte-identical strings.
ExperimentOutput run_scaling(const ExperimentConfig& cfg);

// Single-N search; same reproducibility contract.
ExperimentOutput run_recur(const ExperimentConfig& cfg);

std::uint64_t fnv1a_hash(const std::string& text);
std::string format_double(double x);  // shortest round-trip, stable across runs

ordered_json scaling_report_json(const ScalingReport& report);
std::string scaling_report_csv(const ScalingReport& report);

}  // namespace polyrecur

#endif  // POLYRECUR_EXPERIMENT_HPP
