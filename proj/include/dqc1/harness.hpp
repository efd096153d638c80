#pragma once

#include "dqc1/purifier.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace dqc1 {

enum class ExperimentKind {
  standard_scatter,
  fidelity_benchmark,
  purity_vs_eta,
  correlations_vs_purity,
  density_of_states,
  purification,
};

const char* experiment_name(ExperimentKind kind);

enum class OutputFormat { csv, json };

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::standard_scatter;
  std::int64_t samples = 10000;
  std::vector<double> eta_values;  // empty -> per-experiment default
  std::uint64_t seed = 1;
  ControlSampler control_sampler;
  bool control_sampler_overridden = false;  // false -> per-experiment default
  int workers = 1;
  std::string output_path;  // empty -> dqc1_<experiment>.<format>
  OutputFormat format = OutputFormat::csv;
  double target_purity = 0.99;  // purification only
  int max_steps = 50;           // purification only

  void validate() const;  // throws std::invalid_argument
};

/// One output row. Fields not used by an experiment stay NaN / -1 and are not
/// emitted; the experiment's column list says which fields are live.
struct SampleRecord {
  static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

  std::int64_t sample_index = 0;
  int step_index = -1;
  double eta = kUnset;
  double bell = kUnset;
  double negativity = kUnset;
  double discord = kUnset;
  double coherence = kUnset;
  double purity_aux = kUnset;
  double success_probability = kUnset;
  double fidelity = kUnset;
  double filter_eta = kUnset;
  double filter_theta = kUnset;
  double filter_phi = kUnset;
  double frac_discord = kUnset;
  double frac_coherence = kUnset;
  double frac_bell = kUnset;

  double field(const std::string& column) const;
  void set_field(const std::string& column, double value);
};

struct ExperimentResult {
  std::vector<std::string> columns;
  std::vector<SampleRecord> records;
  std::string summary_text;  // serialized JSON summary
};

ExperimentResult run_standard_scatter(const ExperimentConfig& cfg);
ExperimentResult run_fidelity_benchmark(const ExperimentConfig& cfg);
ExperimentResult run_purity_vs_eta(const ExperimentConfig& cfg);
ExperimentResult run_correlations_vs_purity(const ExperimentConfig& cfg);
ExperimentResult run_density_of_states(const ExperimentConfig& cfg);
ExperimentResult run_purification(const ExperimentConfig& cfg);

/// Dispatch on cfg.experiment.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct io_error : std::runtime_error {
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

/// Writes the record file (CSV or JSON) plus a <path>.meta.json sidecar with
/// seed, config, tool version, wall time and the summary.
void emit(const ExperimentResult& result, const ExperimentConfig& cfg, double wall_seconds);

/// Reads back a CSV written by emit; columns come from the header row.
std::pair<std::vector<std::string>, std::vector<SampleRecord>> read_csv(const std::string& path);

/// Parses a 64-bit seed given as decimal or 0x-prefixed hex.
std::uint64_t parse_seed(const std::string& text);

/// Runs every module's invariant suite; prints one line per suite.
/// Returns the number of failed suites.
int run_validation(std::ostream& os, std::uint64_t seed = 20240801);

/// Full command-line entry point. Exit codes: 0 success, 1 validation
/// failure, 2 invalid configuration, 3 I/O failure.
int cli_main(int argc, char** argv);

extern const char* kToolVersion;

}  // namespace dqc1
