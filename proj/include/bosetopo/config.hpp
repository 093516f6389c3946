/// JSON configuration schema for the CLI, ModelSpec (de)serialization,
/// sweep parameter paths, and CSV output.

#pragma once

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bosetopo/models.hpp"

namespace bosetopo {

inline constexpr const char* kToolkitVersion = "bosetopo 0.1.0";

/// Malformed input (unreadable file, invalid JSON).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Well-formed JSON with invalid content (bad ranges, missing fields,
/// unknown enum values, nonexistent parameter paths).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Task {
  Spectrum,
  Bands,
  Classify,
  Invariant,
  ZeroModes,
  SParams,
  Sweep,
  BulkBoundary,
};

struct SweepConfig {
  std::string parameter;  // e.g. "perturbations[0].strength", "parameters.t"
  double start = 0.0;
  double stop = 0.0;
  int steps = 2;
};

struct ScatterConfig {
  double kappa_c = 0.5e6;  // boundary photon port rate (Hz)
  double kappa_m = 10e6;   // magnon intrinsic rate (Hz)
  double omega_center = -1.0;  // < 0: default to the model's omega_a
  double omega_span = 1e9;
};

struct RunConfig {
  ModelSpec model;
  Task task = Task::Spectrum;
  std::optional<SweepConfig> sweep;
  std::string output;
  int grid = 1001;
  double tol = -1.0;  // < 0: module defaults
  int jobs = 1;
  ScatterConfig scattering;
};

// ---------------------------------------------------------------------------
// Parsing and serialization
// ---------------------------------------------------------------------------

/// Complex scalars are written as a plain number (real) or a [re, im] pair.
Complex complex_from_json(const nlohmann::json& j);
nlohmann::json complex_to_json(const Complex& z);

ModelSpec model_spec_from_json(const nlohmann::json& j);
nlohmann::json model_spec_to_json(const ModelSpec& spec);

RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json run_config_to_json(const RunConfig& config);

/// Reads and parses a config file; throws ParseError / ValidationError.
RunConfig load_run_config(const std::string& path);

/// Resolves a sweep parameter path on a ModelSpec and assigns `value`.
/// Supported paths: "parameters.<name>" (real part), "perturbations[i].strength",
/// "N", "n_offset". Throws ValidationError for unknown paths.
void set_model_parameter(ModelSpec& spec, const std::string& path,
                         double value);

// ---------------------------------------------------------------------------
// CSV output
// ---------------------------------------------------------------------------

/// Comma-separated output: optional "# ..." comment lines, one header row,
/// then data rows. Numbers are written with full double precision; complex
/// columns must be split into _re/_im pairs by the caller.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void comment(const std::string& text);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& fields);

  static std::string num(double v);

 private:
  std::ofstream out_;
  size_t n_columns_ = 0;
};

}  // namespace bosetopo
