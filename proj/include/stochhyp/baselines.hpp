#pragma once

// Comparison solvers: stochastic collocation at Gauss nodes, single-z
// deterministic runs, and an exact characteristic solution of the Liouville
// problem when the potential is piecewise constant.

#include <functional>
#include <span>
#include <vector>

#include "stochhyp/convection.hpp"
#include "stochhyp/fields.hpp"
#include "stochhyp/gpc_core.hpp"
#include "stochhyp/liouville.hpp"

namespace stochhyp::baselines {

/// Per-node solutions and their quadrature moments.
struct CollocationRun {
  gpc::QuadratureRule rule;
  /// samples[m] is the solution at rule.nodes[m].
  std::vector<std::vector<double>> samples;
  MomentField moments;
};

/// Solution of the deterministic problem at one z.
using NodeSolver = std::function<std::vector<double>(double z)>;

/// Runs `solve` at every node (in parallel when threads > 1) and aggregates
/// E = sum u w, Var = sum u^2 w - E^2 in node order. A failure at node m is
/// rethrown as the original error type with the node index prepended.
CollocationRun collocate(const gpc::QuadratureRule& rule, const NodeSolver& solve, int threads = 1);

/// Moments of aligned per-node samples, summed in node order.
MomentField aggregate(const gpc::QuadratureRule& rule, const std::vector<std::vector<double>>& samples);

std::vector<double> deterministic_convection(const convection::InterfaceCoefficient& coef,
                                             const convection::ConvectionGrid& grid,
                                             const convection::InitialProfile& u0, int steps, int order,
                                             LimiterMap map, Integrator integrator, double z);

std::vector<double> deterministic_liouville(const liouville::LiouvilleScheme& scheme,
                                            const liouville::PhaseProfile& u0, int steps,
                                            liouville::Integrator integrator, double z);

CollocationRun collocate_convection(const convection::InterfaceCoefficient& coef,
                                    const convection::ConvectionGrid& grid,
                                    const convection::InitialProfile& u0, int steps, int order,
                                    LimiterMap map, Integrator integrator, int points, int threads = 1);

CollocationRun collocate_liouville(const liouville::LiouvilleScheme& scheme, const liouville::PhaseProfile& u0,
                                   int steps, liouville::Integrator integrator, int points, int threads = 1);

/// Exact solution of u_t + v u_x - V_x u_v = 0 for a potential that is
/// constant on each side of x = 0 (slope_amp * z == 0), by tracing the
/// characteristic back to t = 0 through at most one barrier interaction.
class LiouvilleCharacteristics {
 public:
  /// Throws UsageError if the potential is not piecewise constant at z.
  LiouvilleCharacteristics(liouville::PotentialBarrier barrier, double z, liouville::PhaseProfile u0);

  double value(double x, double v, double t) const;

  /// Values at the cell centers of `grid`, index i * nv + j.
  std::vector<double> sample(const liouville::PhaseSpaceGrid& grid, double t) const;

 private:
  double v_left_;
  double v_right_;
  liouville::PhaseProfile u0_;
};

}  // namespace stochhyp::baselines
