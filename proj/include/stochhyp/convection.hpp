#pragma once

// Discrete gPC stochastic Galerkin solver for u_t + (c(x,z) u)_x = 0 with a
// wave speed that jumps at x = 0 and depends linearly on z.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stochhyp/bap_limiter.hpp"
#include "stochhyp/fields.hpp"
#include "stochhyp/gpc_core.hpp"

namespace stochhyp::convection {

/// Which quantity the interface condition conserves.
/// conserve_flux: c^- u(0^-) = c^+ u(0^+). conserve_mass: u(0^-) = u(0^+).
enum class Transmission { conserve_flux, conserve_mass };

/// c(x, z) = c_minus + sigma z for x < 0, c_plus + sigma z for x > 0.
struct InterfaceCoefficient {
  double c_minus = 1.0;
  double c_plus = 2.0;
  double sigma = 0.3;
  Transmission transmission = Transmission::conserve_flux;

  double speed_minus(double z) const { return c_minus + sigma * z; }
  double speed_plus(double z) const { return c_plus + sigma * z; }

  /// u(0^+) / u(0^-)
  double interface_factor(double z) const {
    return transmission == Transmission::conserve_flux ? speed_minus(z) / speed_plus(z) : 1.0;
  }

  /// Largest speed over z in [-1, 1].
  double max_speed() const;

  /// Throws ConfigError unless both speeds stay positive on [-1, 1].
  void validate() const;
};

/// Initial profile restricted to [lo, hi] and extended by zero.
struct InitialProfile {
  std::string id;
  double lo = 0.0;
  double hi = 0.0;
  std::function<double(double)> shape;

  double operator()(double x) const { return (x >= lo && x <= hi) ? shape(x) : 0.0; }
};

/// cos(pi x / 4) on [-1, 3]
InitialProfile cos_window();
/// cos^4(pi (x - 1) / 4) on [-1, 3]; C^3 with compact support.
InitialProfile smooth_bump();
/// Throws ConfigError on unknown ids.
InitialProfile profile_from_id(const std::string& id);

/// Uniform grid on [a, b] with x = 0 on a cell edge. Cell i spans
/// [a + i dx, a + (i+1) dx]; the interface lies between cells
/// interface_index() and interface_index() + 1.
class ConvectionGrid {
 public:
  /// `a` is moved to the nearest multiple of dx (at most dx/2); see shift().
  ConvectionGrid(double a, double b, double dx, double dt);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double dx() const noexcept { return dx_; }
  double dt() const noexcept { return dt_; }
  int cells() const noexcept { return cells_; }
  int interface_index() const noexcept { return interface_index_; }
  /// Adjusted a minus requested a.
  double shift() const noexcept { return shift_; }

  double center(int i) const { return (i - interface_index_ - 0.5) * dx_; }
  std::vector<double> centers() const;

 private:
  double a_;
  double b_;
  double dx_;
  double dt_;
  int cells_;
  int interface_index_;
  double shift_;
};

/// Throws ConfigError when max_z c(z) dt / dx exceeds one (checked at z = +/-1).
void check_cfl(const InterfaceCoefficient& coef, const ConvectionGrid& grid);

/// Galerkin matrices of c^{+/-}(z) dt/dx. `inflow` is the matrix applied to
/// the last left cell when it feeds the first right cell.
struct LambdaMatrices {
  gpc::GalerkinMatrix minus;
  gpc::GalerkinMatrix plus;
  gpc::GalerkinMatrix inflow;
};

LambdaMatrices build_lambda_matrices(const InterfaceCoefficient& coef, const ConvectionGrid& grid,
                                     const gpc::OrthonormalBasis& basis,
                                     const gpc::QuadratureRule& rule);

/// Immersed upwind step in flux form for every gPC mode. Cells update
/// independently; `threads` > 1 spreads them over OpenMP workers with
/// bitwise identical results.
GpcField1D step_first_order(const GpcField1D& field, const LambdaMatrices& lambdas,
                            const ConvectionGrid& grid, int threads = 1);

/// Per-node speeds scaled by dt/dx.
struct NodalLambdas {
  double minus = 0.0;
  double plus = 0.0;
  double inflow = 0.0;
  /// u(0+) / u(0-) at this z.
  double factor = 1.0;
};

NodalLambdas nodal_lambdas(const InterfaceCoefficient& coef, const ConvectionGrid& grid, double z);

/// Edge fluxes of the deterministic immersed scheme at one z.
/// `flux_out[e]` leaves cell e-1 through edge e, `flux_in[e]` enters cell e
/// through edge e (e = 0..cells). They differ only at the interface edge.
/// order 2 uses BAP-limited reconstructions u_i + s_i dx/2.
void nodal_edge_fluxes(std::span<const double> u, const NodalLambdas& lam, const ConvectionGrid& grid,
                       int order, LimiterMap map, std::span<double> flux_out,
                       std::span<double> flux_in);

/// BAP slopes of a nodal profile; zero at the domain ends. The two cells next
/// to the interface see their neighbour across it through u(0+) = factor u(0-).
void nodal_slopes(std::span<const double> u, const ConvectionGrid& grid, LimiterMap map, double factor,
                  std::span<double> slopes);

/// U_i <- U_i - (lam_i F_i - lam_in F_{i-1}) for cell-edge values F (flux form).
/// F = U gives the first-order step.
GpcField1D upwind_update(const GpcField1D& field, const GpcField1D& faces, const LambdaMatrices& lambdas,
                         const ConvectionGrid& grid, int threads = 1);

/// gPC coefficients of the BAP slopes: evaluate at the rule nodes, limit per
/// node, project back.
GpcField1D project_slopes(const GpcField1D& field, const InterfaceCoefficient& coef, const ConvectionGrid& grid,
                          const gpc::NodalTable& table, LimiterMap map, int threads = 1);

/// Second-order step: the upwind update applied to U + S dx/2 with S from
/// project_slopes.
GpcField1D step_second_order(const GpcField1D& field, const InterfaceCoefficient& coef,
                             const LambdaMatrices& lambdas, const ConvectionGrid& grid,
                             const gpc::NodalTable& table, LimiterMap map, int threads = 1);

/// One time step of a forward-Euler update `step`, or Heun's 1/2 (u + step(step(u))).
template <class Field, class Step>
Field integrate(const Field& u, Integrator integrator, Step&& step) {
  Field once = step(u);
  if (integrator == Integrator::euler) return once;
  Field twice = step(once);
  auto out = std::span<double>(twice.data(), twice.size());
  const auto in = std::span<const double>(u.data(), u.size());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = 0.5 * (in[n] + out[n]);
  return twice;
}

/// Deterministic immersed scheme at a frozen z; same arithmetic as the
/// Galerkin path at K = 0.
class DeterministicConvection {
 public:
  DeterministicConvection(const InterfaceCoefficient& coef, const ConvectionGrid& grid, double z);

  std::vector<double> step(std::span<const double> u, int order,
                           LimiterMap map = LimiterMap::arctan) const;

  const NodalLambdas& lambdas() const noexcept { return lam_; }

 private:
  ConvectionGrid grid_;
  NodalLambdas lam_;
};

/// Method-of-characteristics solution including the interface condition.
class AnalyticConvectionSolution {
 public:
  AnalyticConvectionSolution(InterfaceCoefficient coef, InitialProfile u0)
      : coef_(coef), u0_(std::move(u0)) {}

  double value(double x, double t, double z) const;

  /// Points in (-1, 1) where z -> value(x, t, z) may jump, sorted.
  std::vector<double> breakpoints(double x, double t) const;

  /// Expectation and variance over z by Gauss quadrature on each smooth piece.
  gpc::Moments moments(double x, double t) const;

  const InterfaceCoefficient& coefficient() const noexcept { return coef_; }
  const InitialProfile& initial_profile() const noexcept { return u0_; }

 private:
  InterfaceCoefficient coef_;
  InitialProfile u0_;
};

/// Mode-0 projection of a deterministic profile sampled at cell centers.
GpcField1D project_initial(const InitialProfile& u0, const ConvectionGrid& grid, std::size_t modes);

}  // namespace stochhyp::convection
