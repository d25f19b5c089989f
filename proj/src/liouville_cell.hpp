#pragma once

// Per-cell arithmetic of the Hamiltonian-preserving scheme, templated on
// how nodal values and slopes are fetched so that the deterministic solver,
// the serial reference and the cell-blocked Galerkin kernel all execute the
// same floating-point operations.

#include "stochhyp/bap_limiter.hpp"
#include "stochhyp/liouville.hpp"

namespace stochhyp::liouville::detail {

struct CellParams {
  int nx;
  int nv;
  int barrier;
  double dx;
  double dv;
  double dt;
  double half_dx;
  double alpha;
  int order;
  VFluxForm vflux;
  LimiterMap limiter;
};

inline CellParams make_params(const LiouvilleScheme& scheme) {
  const auto& g = scheme.grid();
  const auto& o = scheme.options();
  return {g.nx(), g.nv(), g.barrier_edge(), g.dx(), g.dv(), g.dt(), 0.5 * g.dx(),
          scheme.alpha(), o.order, o.vflux, o.limiter};
}

template <class Values>
double cell_slope(const Values& u, int i, int j, const CellParams& p) {
  if (i == 0 || i == p.nx - 1) return 0.0;
  if (i == p.barrier - 1) return (u(i, j) - u(i - 1, j)) / p.dx;
  if (i == p.barrier) return (u(i + 1, j) - u(i, j)) / p.dx;
  return bap_slope((u(i, j) - u(i - 1, j)) / p.dx, (u(i + 1, j) - u(i, j)) / p.dx, p.limiter);
}

template <class Values, class Slopes>
double face_right(const Values& u, const Slopes& s, int i, int j, const CellParams& p) {
  return p.order == 2 ? u(i, j) + p.half_dx * s(i, j) : u(i, j);
}

template <class Values, class Slopes>
double face_left(const Values& u, const Slopes& s, int i, int j, const CellParams& p) {
  return p.order == 2 ? u(i, j) - p.half_dx * s(i, j) : u(i, j);
}

// Value carried across the barrier into velocity j.
template <class Values, class Slopes>
double barrier_value(const Values& u, const Slopes& s, int j, const NodeContext& ctx,
                     const CellParams& p) {
  const StencilEntry& st = ctx.stencil[static_cast<std::size_t>(j)];
  const int left = p.barrier - 1;
  const int right = p.barrier;
  const bool rightward = j >= p.nv / 2;
  if (st.branch == Branch::reflect) {
    // Reflected particles never left their own side.
    return rightward ? face_left(u, s, right, st.k, p) : face_right(u, s, left, st.k, p);
  }
  const int k2 = st.k + 1 < p.nv ? st.k + 1 : st.k;
  if (rightward) {
    return st.c1 * face_right(u, s, left, st.k, p) + st.c2 * face_right(u, s, left, k2, p);
  }
  return st.c1 * face_left(u, s, right, st.k, p) + st.c2 * face_left(u, s, right, k2, p);
}

// u^-_{e,j}: value at edge e seen from cell e-1.
template <class Values, class Slopes>
double edge_from_left_cell(const Values& u, const Slopes& s, int e, int j, const NodeContext& ctx,
                           const CellParams& p) {
  if (j >= p.nv / 2) return face_right(u, s, e - 1, j, p);
  if (e == p.barrier) return barrier_value(u, s, j, ctx, p);
  if (e == p.nx) return u(p.nx - 1, j);
  return face_left(u, s, e, j, p);
}

// u^+_{e,j}: value at edge e seen from cell e.
template <class Values, class Slopes>
double edge_from_right_cell(const Values& u, const Slopes& s, int e, int j, const NodeContext& ctx,
                            const CellParams& p) {
  if (j < p.nv / 2) return face_left(u, s, e, j, p);
  if (e == p.barrier) return barrier_value(u, s, j, ctx, p);
  if (e == 0) return u(0, j);
  return face_right(u, s, e - 1, j, p);
}

// Flux in v through the edge between values lo (j) and hi (j+1).
inline double v_flux(double lo, double hi, double grad, const CellParams& p) {
  if (p.order == 2) {
    const double edge = 0.5 * (hi + lo) + grad * (p.dt / (2.0 * p.dv)) * (hi - lo);
    return -grad * edge;
  }
  if (p.vflux == VFluxForm::verbatim) return 0.5 * grad * (lo + hi) - 0.5 * p.alpha * (hi - lo);
  return -0.5 * grad * (lo + hi) - 0.5 * p.alpha * (hi - lo);
}

template <class Values, class Slopes>
double cell_rhs(const Values& u, const Slopes& s, int i, int j, const NodeContext& ctx,
                const CellParams& p) {
  const double v = (j - p.nv / 2 + 0.5) * p.dv;
  const double right = edge_from_left_cell(u, s, i + 1, j, ctx, p);
  const double left = edge_from_right_cell(u, s, i, j, ctx, p);
  const double x_term = -v * (right - left) / p.dx;

  const double grad = ctx.gradient[static_cast<std::size_t>(i)];
  const double mid = u(i, j);
  const double up = j + 1 < p.nv ? u(i, j + 1) : mid;
  const double down = j > 0 ? u(i, j - 1) : mid;
  const double v_term = -(v_flux(mid, up, grad, p) - v_flux(down, mid, grad, p)) / p.dv;
  return x_term + v_term;
}

}  // namespace stochhyp::liouville::detail
