#pragma once

// Discrete gPC stochastic Galerkin solver for the Liouville equation
//   u_t + v u_x - V_x(x, z) u_v = 0
// with a potential that jumps at x = 0. The x-fluxes follow particles
// across the jump by energy conservation (transmission or reflection);
// the v-fluxes are central (Lax-Friedrichs or Lax-Wendroff) so the discrete
// solution stays smooth in z.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "stochhyp/bap_limiter.hpp"
#include "stochhyp/fields.hpp"
#include "stochhyp/gpc_core.hpp"

namespace stochhyp::liouville {

/// Uniform phase-space mesh on [-X, X] x [-W, W]. Both axes have an even
/// cell count so x = 0 and v = 0 fall on cell edges; v-centers are
/// symmetric, so v_k = -v_j is exact for k = nv - 1 - j.
class PhaseSpaceGrid {
 public:
  /// Extents are rounded up to whole multiples of dx and dv.
  PhaseSpaceGrid(double x_extent, double v_extent, double dx, double dv, double dt);

  int nx() const noexcept { return nx_; }
  int nv() const noexcept { return nv_; }
  double dx() const noexcept { return dx_; }
  double dv() const noexcept { return dv_; }
  double dt() const noexcept { return dt_; }

  double x_center(int i) const { return (i - nx_ / 2 + 0.5) * dx_; }
  double v_center(int j) const { return (j - nv_ / 2 + 0.5) * dv_; }
  /// Position of edge e, the boundary between cells e-1 and e (e = 0..nx).
  double x_edge(int e) const { return (e - nx_ / 2) * dx_; }
  double x_lo() const { return x_edge(0); }
  double x_hi() const { return x_edge(nx_); }
  double v_lo() const { return -0.5 * nv_ * dv_; }
  double v_hi() const { return 0.5 * nv_ * dv_; }

  /// Edge index of x = 0.
  int barrier_edge() const noexcept { return nx_ / 2; }
  int reflect_index(int j) const noexcept { return nv_ - 1 - j; }
  double max_abs_velocity() const { return v_center(nv_ - 1); }

 private:
  int nx_;
  int nv_;
  double dx_;
  double dv_;
  double dt_;
};

/// V(x, z) = V_0(x) + slope_amp x z with V_0 = v_left for x < 0, v_right for x > 0.
struct PotentialBarrier {
  double v_left = 0.2;
  double v_right = 0.0;
  double slope_amp = 0.1;

  double left_limit(double x, double z) const { return (x <= 0.0 ? v_left : v_right) + slope_amp * x * z; }
  double right_limit(double x, double z) const { return (x < 0.0 ? v_left : v_right) + slope_amp * x * z; }

  /// DV_i(z) = (V(x_{i+1/2}^-) - V(x_{i-1/2}^+)) / dx; excludes the jump.
  double cell_gradient(const PhaseSpaceGrid& grid, int i, double z) const;
  /// max over cells and z in [-1, 1] of |DV_i(z)|; DV is linear in z.
  double max_abs_gradient(const PhaseSpaceGrid& grid) const;
};

enum class Branch { transmit, reflect };

/// Where the value entering a cell at velocity v_j across the barrier comes from.
/// Transmitted values are c1 u_k + c2 u_{k+1} (true linear interpolation at
/// the traced velocity, c1 weighting u_k). Reflected values are u_k with v_k = -v_j.
struct StencilEntry {
  Branch branch = Branch::transmit;
  int k = 0;
  double c1 = 1.0;
  double c2 = 0.0;
  /// Traced velocity (transmit) or -v_j (reflect).
  double velocity = 0.0;
  /// Traced velocity fell outside the grid and was clamped to the extreme cell.
  bool truncated = false;
};

/// Follow a particle at velocity v_j on the side with potential `here` across
/// the jump to the side with potential `there` using 1/2 v^2 + V = const.
/// Transmits when v_j^2 + 2 (here - there) > 0, otherwise reflects.
StencilEntry resolve_interface(double v_j, double here, double there, const PhaseSpaceGrid& grid);

/// Per-z data: cell gradients and the barrier stencil for every v_j.
/// For v_j > 0 the entry describes the value entering the first cell right
/// of the barrier, for v_j < 0 the value entering the last cell left of it.
struct NodeContext {
  double z = 0.0;
  std::vector<double> gradient;
  std::vector<StencilEntry> stencil;
  int truncations = 0;
};

/// v-flux variants. `corrected` is the Lax-Friedrichs product form
///   G = -DV/2 (u_j + u_{j+1}) - alpha/2 (u_{j+1} - u_j);
/// `verbatim` keeps the advective sign as printed in the original scheme and
/// exists only for comparison runs.
enum class VFluxForm { corrected, verbatim };

using stochhyp::Integrator;

struct SchemeOptions {
  int order = 1;
  /// Lax-Friedrichs viscosity; <= 0 selects max |DV|.
  double alpha = 0.0;
  VFluxForm vflux = VFluxForm::corrected;
  LimiterMap limiter = LimiterMap::arctan;
};

/// Deterministic Hamiltonian-preserving scheme for a fixed z, shared by the
/// collocation, deterministic and Galerkin paths.
class LiouvilleScheme {
 public:
  /// Throws ConfigError on a CFL violation or alpha < max |DV|.
  LiouvilleScheme(PhaseSpaceGrid grid, PotentialBarrier barrier, SchemeOptions options);

  const PhaseSpaceGrid& grid() const noexcept { return grid_; }
  const PotentialBarrier& barrier() const noexcept { return barrier_; }
  const SchemeOptions& options() const noexcept { return options_; }
  double alpha() const noexcept { return alpha_; }

  NodeContext context_at(double z) const;

  /// du/dt for a nodal phase-space field u (index i * nv + j).
  void rhs_deterministic(std::span<const double> u, const NodeContext& ctx, std::span<double> out) const;

  /// x-slopes of a nodal field (zero at the domain ends, one-sided at the barrier).
  void slopes(std::span<const double> u, std::span<double> out) const;

 private:
  PhaseSpaceGrid grid_;
  PotentialBarrier barrier_;
  SchemeOptions options_;
  double alpha_;
};

/// gPC Galerkin projection of the deterministic scheme, with the right-hand
/// side evaluated pseudo-spectrally at the nodes of `rule`.
class GalerkinLiouville {
 public:
  /// Requires rule.count() >= K + 1.
  GalerkinLiouville(const LiouvilleScheme& scheme, int max_order, gpc::QuadratureRule rule);

  const LiouvilleScheme& scheme() const noexcept { return *scheme_; }
  const gpc::NodalTable& table() const noexcept { return table_; }
  const NodeContext& context(std::size_t node) const { return contexts_[node]; }
  std::size_t modes() const noexcept { return table_.modes(); }
  /// Truncated stencil entries summed over nodes.
  int truncation_events() const noexcept { return truncations_; }

  /// d/dt of every gPC coefficient. Cell-blocked OpenMP kernel.
  void galerkin_rhs(const GpcField2D& field, GpcField2D& out, int threads = 1) const;

  GpcField2D advance(const GpcField2D& field, Integrator integrator, int threads = 1) const;

 private:
  const LiouvilleScheme* scheme_;
  gpc::NodalTable table_;
  std::vector<NodeContext> contexts_;
  int truncations_ = 0;
};

/// Deterministic solver at a frozen z.
class DeterministicLiouville {
 public:
  DeterministicLiouville(const LiouvilleScheme& scheme, double z);

  std::vector<double> advance(std::span<const double> u, Integrator integrator) const;
  const NodeContext& context() const noexcept { return ctx_; }

 private:
  const LiouvilleScheme* scheme_;
  NodeContext ctx_;
};

using PhaseProfile = std::function<double(double, double)>;

/// Indicator of {x >= 0, v < 0} u {x <= 0, v > 0} inside the unit disk.
double two_quarter_disks(double x, double v);
/// sin(2 pi (1/4 - (x^2 + v^2))) inside the disk of radius 1/2.
double sine_disk(double x, double v);
/// "ex2_init1" or "ex2_init2"; throws ConfigError otherwise.
PhaseProfile phase_profile_from_id(const std::string& id);

/// Samples at cell centers.
std::vector<double> sample_profile(const PhaseProfile& u0, const PhaseSpaceGrid& grid);
/// Mode-0 projection of a deterministic profile.
GpcField2D project_initial(const PhaseProfile& u0, const PhaseSpaceGrid& grid, std::size_t modes);

}  // namespace stochhyp::liouville
