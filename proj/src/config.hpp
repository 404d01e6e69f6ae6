#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "limits.hpp"
#include "report_io.hpp"

namespace ncphase {

// Builds a TestFunction from {"kind": ..., ...}; `where` prefixes error messages.
TestFunction function_from_json(const Json& spec, const std::string& where = "function");
// The spec with every default filled in.
Json normalised_function_spec(const Json& spec, const std::string& where = "function");

struct ProbeSpec {
  std::size_t count = 100;
  std::uint64_t seed = 42;
  double lo = -3.0;
  double hi = 3.0;
};

struct AppendixSpec {
  int first_exp = 1;
  int last_exp = 6;
  double fixed_hbar = 1.0;
  double fixed_theta = 1.0;
};

struct RunConfig {
  ParamSet params{1.0, 1.0, 0.1, 1.0};  // hbar: chain A stage 1; theta: chain B stage 1
  ChainConfig chain;                    // schedules, rule, tolerance, reduction settings
  std::vector<Json> function_specs;
  ProbeSpec probes;
  std::vector<double> t_values;
  double diagonal_ratio = 1.0;
  AppendixSpec appendix;
  LocalizationConfig localization;
  std::filesystem::path outputs = "ncphase_out";
  std::vector<std::string> experiments;
};

const std::vector<std::string>& known_experiments();

// Validates everything; ConfigError messages start with the offending field.
// Relative output paths resolve against `base_dir`.
RunConfig parse_config(const Json& j, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);
Json resolved_json(const RunConfig& c);

struct ExperimentOutcome {
  std::string name;
  bool passed = false;
  std::filesystem::path directory;
};

struct RunSummary {
  bool all_passed = true;
  std::vector<ExperimentOutcome> experiments;
};

// Runs the configured experiments (or only `only` when non-empty), writing one
// directory per experiment under c.outputs.
RunSummary run(const RunConfig& c, const std::string& only = {});

// report.json and errors.csv for a finished experiment; returns the pass flag.
bool write_experiment(const std::filesystem::path& dir, const std::string& name, const Json& config,
                      const std::vector<LimitReport>& reports, const Json& summary = Json::object());

}  // namespace ncphase
