#pragma once

// Convergence studies: gPC order at a fixed mesh, and mesh refinement.

#include <filesystem>
#include <vector>

#include "stochhyp/config.hpp"
#include "stochhyp/experiment.hpp"

namespace stochhyp {

/// Distance between an order-K run and the order-K_ref run on the same mesh.
struct GpcSweepRow {
  int K = 0;
  double l1_coefficients = 0.0;  // zero-padded to K_ref
  double h_norm = 0.0;
  double l1_expectation = 0.0;
  double l1_variance = 0.0;
};

/// Runs config (mode gpc_sg) at every K in `orders` and at `reference_order`.
/// Orders equal to the reference give zero rows.
std::vector<GpcSweepRow> gpc_error_sweep(const ExperimentConfig& config, const std::vector<int>& orders,
                                         int reference_order);

struct MeshSweepRow {
  double dx = 0.0;
  double dt = 0.0;
  metrics::ErrorReport errors;
};

/// Convection only: runs at every dx with dt / dx held at the config's ratio
/// and reports errors against the analytic solution.
std::vector<MeshSweepRow> mesh_error_sweep(const ExperimentConfig& config, const std::vector<double>& spacings);

/// sweep.csv and sweep_loglog.csv (log10 of the parameter and every metric).
void write_sweep(const std::vector<GpcSweepRow>& rows, const std::filesystem::path& dir);
void write_sweep(const std::vector<MeshSweepRow>& rows, const std::filesystem::path& dir);

}  // namespace stochhyp
