#include "stochhyp/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "liouville_cell.hpp"
#include "stochhyp/errors.hpp"

namespace stochhyp::liouville {

namespace {

int even_cells(double extent, double h) {
  // Half-width in whole cells; the 1e-9 guards extents that are exact multiples.
  const double half = std::ceil(extent / h - 1e-9);
  return 2 * std::max(1, static_cast<int>(half));
}

}  // namespace

PhaseSpaceGrid::PhaseSpaceGrid(double x_extent, double v_extent, double dx, double dv, double dt)
    : dx_(dx), dv_(dv), dt_(dt) {
  std::vector<std::string> problems;
  if (!(dx > 0.0)) problems.push_back("dx must be positive");
  if (!(dv > 0.0)) problems.push_back("dv must be positive");
  if (!(dt > 0.0)) problems.push_back("dt must be positive");
  if (!(x_extent > 0.0)) problems.push_back("x_extent must be positive");
  if (!(v_extent > 0.0)) problems.push_back("v_extent must be positive");
  if (!problems.empty()) throw ConfigError(problems);
  nx_ = even_cells(x_extent, dx);
  nv_ = even_cells(v_extent, dv);
}

double PotentialBarrier::cell_gradient(const PhaseSpaceGrid& grid, int i, double z) const {
  return (left_limit(grid.x_edge(i + 1), z) - right_limit(grid.x_edge(i), z)) / grid.dx();
}

double PotentialBarrier::max_abs_gradient(const PhaseSpaceGrid& grid) const {
  double worst = 0.0;
  for (int i = 0; i < grid.nx(); ++i) {
    worst = std::max({worst, std::abs(cell_gradient(grid, i, -1.0)), std::abs(cell_gradient(grid, i, 1.0))});
  }
  return worst;
}

StencilEntry resolve_interface(double v_j, double here, double there, const PhaseSpaceGrid& grid) {
  StencilEntry entry;
  const double disc = v_j * v_j + 2.0 * (here - there);
  const double dv = grid.dv();
  const int nv = grid.nv();
  if (disc > 0.0) {
    entry.branch = Branch::transmit;
    const double target = std::copysign(std::sqrt(disc), v_j);
    entry.velocity = target;
    if (target >= grid.v_center(nv - 1)) {
      entry.k = nv - 1;
      entry.truncated = target > grid.v_center(nv - 1);
      return entry;
    }
    if (target < grid.v_center(0)) {
      entry.k = 0;
      entry.truncated = true;
      return entry;
    }
    int k = static_cast<int>(std::floor((target - grid.v_center(0)) / dv));
    k = std::clamp(k, 0, nv - 2);
    // Guard the floor against rounding at cell centers.
    while (k > 0 && grid.v_center(k) > target) --k;
    while (k + 1 < nv - 1 && grid.v_center(k + 1) <= target) ++k;
    entry.k = k;
    entry.c2 = (target - grid.v_center(k)) / dv;
    entry.c1 = 1.0 - entry.c2;
    return entry;
  }
  entry.branch = Branch::reflect;
  entry.velocity = -v_j;
  entry.k = std::clamp(static_cast<int>(std::lround(-v_j / dv + 0.5 * nv - 0.5)), 0, nv - 1);
  entry.c1 = 1.0;
  entry.c2 = 0.0;
  return entry;
}

LiouvilleScheme::LiouvilleScheme(PhaseSpaceGrid grid, PotentialBarrier barrier, SchemeOptions options)
    : grid_(grid), barrier_(barrier), options_(options) {
  std::vector<std::string> problems;
  if (options_.order != 1 && options_.order != 2) problems.push_back("order must be 1 or 2");
  const double max_grad = barrier_.max_abs_gradient(grid_);
  alpha_ = options_.alpha > 0.0 ? options_.alpha : max_grad;
  if (alpha_ < max_grad) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Lax-Friedrichs alpha = " << alpha_ << " is below max |DV| = " << max_grad;
    problems.push_back(msg.str());
  }
  const double v_speed = options_.order == 1 ? alpha_ : max_grad;
  const double cfl = grid_.dt() * (grid_.max_abs_velocity() / grid_.dx() + v_speed / grid_.dv());
  if (cfl > 1.0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "CFL violated: dt (max|v|/dx + max|DV|/dv) = " << cfl << " > 1";
    problems.push_back(msg.str());
  }
  if (!problems.empty()) throw ConfigError(problems);
}

NodeContext LiouvilleScheme::context_at(double z) const {
  NodeContext ctx;
  ctx.z = z;
  ctx.gradient.resize(static_cast<std::size_t>(grid_.nx()));
  for (int i = 0; i < grid_.nx(); ++i) ctx.gradient[static_cast<std::size_t>(i)] = barrier_.cell_gradient(grid_, i, z);

  const double v_minus = barrier_.left_limit(0.0, z);
  const double v_plus = barrier_.right_limit(0.0, z);
  ctx.stencil.resize(static_cast<std::size_t>(grid_.nv()));
  for (int j = 0; j < grid_.nv(); ++j) {
    const double v = grid_.v_center(j);
    // Rightward velocities arrive on the right side, leftward on the left side.
    auto entry = v > 0.0 ? resolve_interface(v, v_plus, v_minus, grid_)
                         : resolve_interface(v, v_minus, v_plus, grid_);
    if (entry.truncated) ++ctx.truncations;
    ctx.stencil[static_cast<std::size_t>(j)] = entry;
  }
  return ctx;
}

void LiouvilleScheme::slopes(std::span<const double> u, std::span<double> out) const {
  const auto p = detail::make_params(*this);
  const auto values = [&](int i, int j) { return u[static_cast<std::size_t>(i * p.nv + j)]; };
  for (int i = 0; i < p.nx; ++i) {
    for (int j = 0; j < p.nv; ++j) out[static_cast<std::size_t>(i * p.nv + j)] = detail::cell_slope(values, i, j, p);
  }
}

void LiouvilleScheme::rhs_deterministic(std::span<const double> u, const NodeContext& ctx,
                                        std::span<double> out) const {
  const auto p = detail::make_params(*this);
  const auto cells = static_cast<std::size_t>(p.nx * p.nv);
  if (u.size() != cells || out.size() != cells) throw UsageError("rhs_deterministic: size mismatch");
  std::vector<double> s;
  if (p.order == 2) {
    s.resize(cells);
    slopes(u, s);
  }
  const auto values = [&](int i, int j) { return u[static_cast<std::size_t>(i * p.nv + j)]; };
  const auto slope_at = [&](int i, int j) { return s[static_cast<std::size_t>(i * p.nv + j)]; };
  for (int i = 0; i < p.nx; ++i) {
    for (int j = 0; j < p.nv; ++j) {
      out[static_cast<std::size_t>(i * p.nv + j)] = detail::cell_rhs(values, slope_at, i, j, ctx, p);
    }
  }
}

GalerkinLiouville::GalerkinLiouville(const LiouvilleScheme& scheme, int max_order,
                                     gpc::QuadratureRule rule)
    : scheme_(&scheme), table_(gpc::OrthonormalBasis(max_order), [&] {
        if (rule.count() < static_cast<std::size_t>(max_order) + 1) {
          throw ConfigError("quadrature count " + std::to_string(rule.count()) +
                            " is below K+1 = " + std::to_string(max_order + 1));
        }
        return rule;
      }()) {
  contexts_.reserve(table_.nodes());
  for (double z : table_.rule().nodes) {
    contexts_.push_back(scheme.context_at(z));
    truncations_ += contexts_.back().truncations;
  }
}

void GalerkinLiouville::galerkin_rhs(const GpcField2D& field, GpcField2D& out, int threads) const {
  const auto p = detail::make_params(*scheme_);
  const std::size_t modes = table_.modes();
  const std::size_t nodes = table_.nodes();
  if (field.nx() != static_cast<std::size_t>(p.nx) || field.nv() != static_cast<std::size_t>(p.nv) ||
      field.modes() != modes) {
    throw UsageError("galerkin_rhs: field shape does not match grid and gPC order");
  }
  if (out.nx() != field.nx() || out.nv() != field.nv() || out.modes() != modes) {
    out = GpcField2D(field.nx(), field.nv(), modes);
  }
  const std::size_t cells = field.cells();

  // Cell-major nodal values: vals[c * M + m].
  std::vector<double> vals(cells * nodes);
#pragma omp parallel for num_threads(threads) if (threads > 1) schedule(static)
  for (int i = 0; i < p.nx; ++i) {
    for (int j = 0; j < p.nv; ++j) {
      const auto c = static_cast<std::size_t>(i * p.nv + j);
      const auto coeffs = field.cell(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      for (std::size_t m = 0; m < nodes; ++m) vals[c * nodes + m] = table_.value_at(coeffs, m);
    }
  }

  std::vector<double> slopes;
  if (p.order == 2) {
    slopes.resize(cells * nodes);
#pragma omp parallel for num_threads(threads) if (threads > 1) schedule(static)
    for (int i = 0; i < p.nx; ++i) {
      for (std::size_t m = 0; m < nodes; ++m) {
        const auto values = [&](int ii, int jj) { return vals[static_cast<std::size_t>(ii * p.nv + jj) * nodes + m]; };
        for (int j = 0; j < p.nv; ++j) {
          slopes[static_cast<std::size_t>(i * p.nv + j) * nodes + m] = detail::cell_slope(values, i, j, p);
        }
      }
    }
  }

#pragma omp parallel for num_threads(threads) if (threads > 1) schedule(static)
  for (int i = 0; i < p.nx; ++i) {
    for (int j = 0; j < p.nv; ++j) {
      auto target = out.cell(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      std::fill(target.begin(), target.end(), 0.0);
      for (std::size_t m = 0; m < nodes; ++m) {
        const auto values = [&](int ii, int jj) { return vals[static_cast<std::size_t>(ii * p.nv + jj) * nodes + m]; };
        const auto slope_at = [&](int ii, int jj) { return slopes[static_cast<std::size_t>(ii * p.nv + jj) * nodes + m]; };
        const double r = detail::cell_rhs(values, slope_at, i, j, contexts_[m], p);
        table_.accumulate(r, m, target);
      }
    }
  }
}

GpcField2D GalerkinLiouville::advance(const GpcField2D& field, Integrator integrator, int threads) const {
  const double dt = scheme_->grid().dt();
  GpcField2D rate;
  galerkin_rhs(field, rate, threads);
  GpcField2D stage(field.nx(), field.nv(), field.modes());
  auto u = field.raw();
  auto r = rate.raw();
  auto s = stage.raw();
  for (std::size_t n = 0; n < u.size(); ++n) s[n] = u[n] + dt * r[n];
  if (integrator == Integrator::euler) return stage;

  galerkin_rhs(stage, rate, threads);
  GpcField2D next(field.nx(), field.nv(), field.modes());
  auto out = next.raw();
  for (std::size_t n = 0; n < u.size(); ++n) out[n] = 0.5 * (u[n] + (s[n] + dt * r[n]));
  return next;
}

DeterministicLiouville::DeterministicLiouville(const LiouvilleScheme& scheme, double z)
    : scheme_(&scheme), ctx_(scheme.context_at(z)) {}

std::vector<double> DeterministicLiouville::advance(std::span<const double> u, Integrator integrator) const {
  const double dt = scheme_->grid().dt();
  std::vector<double> rate(u.size());
  scheme_->rhs_deterministic(u, ctx_, rate);
  std::vector<double> stage(u.size());
  for (std::size_t n = 0; n < u.size(); ++n) stage[n] = u[n] + dt * rate[n];
  if (integrator == Integrator::euler) return stage;

  scheme_->rhs_deterministic(stage, ctx_, rate);
  std::vector<double> next(u.size());
  for (std::size_t n = 0; n < u.size(); ++n) next[n] = 0.5 * (u[n] + (stage[n] + dt * rate[n]));
  return next;
}

double two_quarter_disks(double x, double v) {
  if (x * x + v * v >= 1.0) return 0.0;
  if (x >= 0.0 && v < 0.0) return 1.0;
  if (x <= 0.0 && v > 0.0) return 1.0;
  return 0.0;
}

double sine_disk(double x, double v) {
  const double r2 = x * x + v * v;
  if (r2 >= 0.25) return 0.0;
  return std::sin(2.0 * std::numbers::pi * (0.25 - r2));
}

PhaseProfile phase_profile_from_id(const std::string& id) {
  if (id == "ex2_init1") return two_quarter_disks;
  if (id == "ex2_init2") return sine_disk;
  throw ConfigError("unknown phase-space initial profile '" + id + "'");
}

std::vector<double> sample_profile(const PhaseProfile& u0, const PhaseSpaceGrid& grid) {
  std::vector<double> u(static_cast<std::size_t>(grid.nx() * grid.nv()));
  for (int i = 0; i < grid.nx(); ++i) {
    for (int j = 0; j < grid.nv(); ++j) u[static_cast<std::size_t>(i * grid.nv() + j)] = u0(grid.x_center(i), grid.v_center(j));
  }
  return u;
}

GpcField2D project_initial(const PhaseProfile& u0, const PhaseSpaceGrid& grid, std::size_t modes) {
  GpcField2D field(static_cast<std::size_t>(grid.nx()), static_cast<std::size_t>(grid.nv()), modes);
  const auto samples = sample_profile(u0, grid);
  for (int i = 0; i < grid.nx(); ++i) {
    for (int j = 0; j < grid.nv(); ++j) {
      field(static_cast<std::size_t>(i), static_cast<std::size_t>(j), 0) = samples[static_cast<std::size_t>(i * grid.nv() + j)];
    }
  }
  return field;
}

}  // namespace stochhyp::liouville
