#pragma once

#include "cablesim/scenarios.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace cablesim {

/// Config-file problem: parse failure (with line info) or a validation
/// failure naming the offending key and constraint.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem problem while reading or writing run artifacts.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fully resolved run configuration. Default-constructed values are the
/// documented defaults; load_config overlays a JSON file on top of them.
struct RunConfig {
  std::string preset_name;  // empty unless the file named a preset
  CableSpec cable;
  Scenario scenario;
  RandomizationRanges randomization;  // base mirrors `cable`
  long long count = 10;
  std::string output_directory = "out";
  int record_stride = 0;  // 0 selects a stride automatically
  std::vector<std::string> formats{"csv", "jsonl"};
};

/// Parses and validates a JSON config. Empty or whitespace-only files mean
/// "all defaults". Unknown keys are rejected with their dotted path;
/// parse errors carry line and column.
RunConfig load_config(const std::filesystem::path& path);

/// Same validation applied to an in-memory JSON text (used by load_config
/// and the tests).
RunConfig parse_config(const std::string& text);

/// JSON echo of every resolved field.
std::string resolved_config_json(const RunConfig& config);

/// Writes resolved_config.json into `dir`.
void write_resolved_config(const RunConfig& config,
                           const std::filesystem::path& dir);

/// One CSV per monitored node (time_s,x_m,y_m,z_m,vx,vy,vz), the held-end
/// reaction trace (time_s,fx_n,fy_n,fz_n) and a summary.json with the
/// stability report. Values are printed with 17 significant digits.
/// Returns the paths written, relative to `dir`.
std::vector<std::filesystem::path> write_traces(const ExperimentRecord& record,
                                                const std::filesystem::path& dir);

struct TraceData {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Reads back a CSV written by write_traces (round-trip exact).
TraceData read_trace(const std::filesystem::path& path);

/// records.jsonl (one record per line, with relative trace paths), a
/// manifest.json carrying seed/ranges/scenario with the timestamp isolated
/// on its own line, and one trace directory per record.
void write_dataset(const std::vector<ExperimentRecord>& records,
                   const std::filesystem::path& dir,
                   const RandomizationRanges& ranges, const Scenario& scenario);

/// Text table mirroring the experiment-parameter layout:
/// No., E (MPa), discretization, dt (s), Stability, Sec To Instability.
std::string report_table(const std::vector<ExperimentRecord>& records);

/// Re-runs the detectors over a stored trace directory; returns the
/// recomputed summary as a JSON string.
std::string analyze_trace_dir(const std::filesystem::path& dir);

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitIoError = 3,
  kExitInternalError = 4,
};

}  // namespace cablesim
