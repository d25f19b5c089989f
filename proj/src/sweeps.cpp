#include "stochhyp/sweeps.hpp"

#include <cmath>
#include <fstream>

#include "stochhyp/errors.hpp"

namespace stochhyp {

namespace fs = std::filesystem;

std::vector<GpcSweepRow> gpc_error_sweep(const ExperimentConfig& config, const std::vector<int>& orders,
                                         int reference_order) {
  if (config.mode != SolverMode::gpc_sg) throw ConfigError("gPC sweeps need mode = gpc_sg");
  for (int K : orders) {
    if (K > reference_order) throw ConfigError("sweep order " + std::to_string(K) + " exceeds the reference order");
  }
  auto at = [&](int K) {
    ExperimentConfig c = config;
    c.K = K;
    c.oracle = false;
    // An explicit rule size would be too small for the larger orders.
    c.quadrature = config.problem == Problem::liouville && config.quadrature > 0
                       ? std::max(config.quadrature, K + 1)
                       : 0;
    return run_experiment(c);
  };
  const RunResult reference = at(reference_order);
  const double measure = config.problem == Problem::convection ? config.dx : config.dx * config.dv;

  std::vector<GpcSweepRow> rows;
  for (int K : orders) {
    const RunResult run = at(K);
    GpcSweepRow row;
    row.K = K;
    row.l1_coefficients =
        metrics::coefficient_l1_distance(run.coeffs, run.modes, reference.coeffs, reference.modes, measure);
    row.h_norm = metrics::h_distance(run.coeffs, run.modes, reference.coeffs, reference.modes, measure);
    row.l1_expectation = metrics::l1_distance(run.moments.expectation, reference.moments.expectation, measure);
    row.l1_variance = metrics::l1_distance(run.moments.variance, reference.moments.variance, measure);
    rows.push_back(row);
  }
  return rows;
}

std::vector<MeshSweepRow> mesh_error_sweep(const ExperimentConfig& config, const std::vector<double>& spacings) {
  if (config.problem != Problem::convection) throw ConfigError("mesh sweeps need the analytic convection solution");
  const double ratio = config.dt / config.dx;
  std::vector<MeshSweepRow> rows;
  for (double dx : spacings) {
    ExperimentConfig c = config;
    c.dx = dx;
    c.dt = ratio * dx;
    c.oracle = true;
    const RunResult run = run_experiment(c);
    rows.push_back({dx, c.dt, *run.errors});
  }
  return rows;
}

namespace {

std::string log_or_nan(double v) { return format_number(v > 0.0 ? std::log10(v) : std::nan("")); }

}  // namespace

void write_sweep(const std::vector<GpcSweepRow>& rows, const fs::path& dir) {
  fs::create_directories(dir);
  std::ofstream out(dir / "sweep.csv");
  std::ofstream log(dir / "sweep_loglog.csv");
  out << "K,l1_coefficients,h_norm,l1_expectation,l1_variance\n";
  log << "log10_K,log10_l1_coefficients,log10_h_norm,log10_l1_expectation,log10_l1_variance\n";
  for (const auto& r : rows) {
    out << r.K << "," << format_number(r.l1_coefficients) << "," << format_number(r.h_norm) << ","
        << format_number(r.l1_expectation) << "," << format_number(r.l1_variance) << "\n";
    log << log_or_nan(r.K) << "," << log_or_nan(r.l1_coefficients) << "," << log_or_nan(r.h_norm) << ","
        << log_or_nan(r.l1_expectation) << "," << log_or_nan(r.l1_variance) << "\n";
  }
}

void write_sweep(const std::vector<MeshSweepRow>& rows, const fs::path& dir) {
  fs::create_directories(dir);
  std::ofstream out(dir / "sweep.csv");
  std::ofstream log(dir / "sweep_loglog.csv");
  out << "dx,dt,l1,h_norm,l1_expectation,l1_variance\n";
  log << "log10_dx,log10_l1,log10_h_norm,log10_l1_expectation,log10_l1_variance\n";
  for (const auto& r : rows) {
    const auto& e = r.errors;
    out << format_number(r.dx) << "," << format_number(r.dt) << "," << format_number(e.l1) << ","
        << format_number(e.h_norm) << "," << format_number(e.l1_expectation) << ","
        << format_number(e.l1_variance) << "\n";
    log << log_or_nan(r.dx) << "," << log_or_nan(e.l1) << "," << log_or_nan(e.h_norm) << ","
        << log_or_nan(e.l1_expectation) << "," << log_or_nan(e.l1_variance) << "\n";
  }
}

}  // namespace stochhyp
