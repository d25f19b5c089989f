#pragma once

// Runs an ExperimentConfig end to end and writes its artifacts.

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stochhyp/config.hpp"
#include "stochhyp/fields.hpp"
#include "stochhyp/metrics.hpp"

namespace stochhyp {

struct RunHooks {
  /// Called on the initial nodal/modal data before the first step.
  std::function<void(std::span<double>)> perturb_initial;
};

struct RunResult {
  ExperimentConfig config;
  /// Cell coordinates; v is empty for convection.
  std::vector<double> x;
  std::vector<double> v;
  /// gpc_sg: coefficients (cells x modes). Other modes leave these empty.
  std::vector<double> coeffs;
  std::size_t modes = 0;
  /// collocation: one sample set per node; deterministic: a single set.
  std::vector<double> nodes;
  std::vector<std::vector<double>> samples;
  MomentField moments;
  std::optional<metrics::ErrorReport> errors;
  int steps = 0;
  int truncation_events = 0;
  double initial_mass = 0.0;
  double final_mass = 0.0;
  double wall_seconds = 0.0;
};

/// Throws ConfigError on an invalid config and DivergenceError when a
/// non-finite value appears; the latter carries the cell location.
RunResult run_experiment(const ExperimentConfig& config, const RunHooks& hooks = {});

/// moments.csv, coeffs.csv or samples.csv, errors.csv (when available), summary.txt.
void write_outputs(const RunResult& result, const std::filesystem::path& dir);

/// Runs and writes; returns 0, 2 (configuration error) or 3 (divergence).
/// Failures still leave a summary.txt describing the problem in `dir`.
int run_to_directory(const ExperimentConfig& config, const std::filesystem::path& dir,
                     const RunHooks& hooks = {});

/// Full-precision number formatting used by every writer.
std::string format_number(double v);

}  // namespace stochhyp
