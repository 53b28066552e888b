#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace symproj {

/// Declarative description of one CLI experiment, parsed from JSON.
/// See README ("Scenario files") for the schema and per-kind fields.
struct Scenario {
  std::string name;
  std::string kind;  // theorem-check | oat-sweep | ramp | bec | circuit | witness
  std::uint64_t seed = 0;
  nlohmann::json config;  // full validated document

  struct Tolerances {
    double chain = 1e-8;
    double xi = 1e-6;
    double hypothesis = 1e-10;
    double parity = 1e-9;
  } tol;

  std::string csv_path;      // empty: no CSV written
  std::string summary_path;  // empty: no summary written

  std::string sweep_parameter;
  std::vector<double> sweep_values;

  static Scenario parse(const nlohmann::json& config);
  static Scenario parse_file(const std::string& path);
};

/// One CSV row: the swept value plus kind-specific numeric columns.
struct ResultRow {
  std::size_t index = 0;
  double value = 0.0;
  std::vector<double> columns;  // matches RunResult::column_names
  bool pass = true;
  std::uint64_t seed = 0;       // scenario seed XOR grid index
  double walltime_s = 0.0;
};

struct RunResult {
  std::vector<std::string> column_names;
  std::vector<ResultRow> rows;
  bool all_pass = true;
  nlohmann::json summary_extra;  // kind-specific aggregates
};

/// Executes every grid point. Points are independent pure computations and
/// run on `workers` threads (the trajectory-style ramp kind is inherently
/// sequential and ignores the pool); rows come back ordered by grid index
/// either way.
RunResult run_scenario(const Scenario& scenario, int workers = 1);

/// Formats rows as CSV: '.' decimal separator, 17 significant digits,
/// wall-time last.
std::string to_csv(const Scenario& scenario, const RunResult& result);

nlohmann::json summary_json(const Scenario& scenario, const RunResult& result);

/// Full CLI entry: parse, run, write outputs. Returns the process exit code
/// (0 all pass, 2 any pass flag false, 1 config or runtime error). No output
/// file is touched before the run completes.
int run_config(const nlohmann::json& config, bool validate_only, int workers);
int run_config_file(const std::string& path, bool validate_only, int workers);

/// Worker count from SYMPROJ_WORKERS, default 1.
int workers_from_env();

}  // namespace symproj
