#include "stochhyp/convection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "stochhyp/errors.hpp"

namespace stochhyp::convection {

double InterfaceCoefficient::max_speed() const {
  return std::max(c_minus, c_plus) + std::abs(sigma);
}

void InterfaceCoefficient::validate() const {
  std::vector<std::string> problems;
  if (!(c_minus - std::abs(sigma) > 0.0)) {
    problems.push_back("c_minus + sigma z must stay positive on [-1, 1] (c_minus = " +
                       std::to_string(c_minus) + ", sigma = " + std::to_string(sigma) + ")");
  }
  if (!(c_plus - std::abs(sigma) > 0.0)) {
    problems.push_back("c_plus + sigma z must stay positive on [-1, 1] (c_plus = " +
                       std::to_string(c_plus) + ", sigma = " + std::to_string(sigma) + ")");
  }
  if (!problems.empty()) throw ConfigError(problems);
}

InitialProfile cos_window() {
  return {"cos_window", -1.0, 3.0, [](double x) { return std::cos(0.25 * std::numbers::pi * x); }};
}

InitialProfile smooth_bump() {
  return {"smooth_bump", -1.0, 3.0, [](double x) {
            const double c = std::cos(0.25 * std::numbers::pi * (x - 1.0));
            return c * c * c * c;
          }};
}

InitialProfile profile_from_id(const std::string& id) {
  if (id == "cos_window") return cos_window();
  if (id == "smooth_bump") return smooth_bump();
  throw ConfigError("unknown convection initial profile '" + id + "'");
}

ConvectionGrid::ConvectionGrid(double a, double b, double dx, double dt) : dx_(dx), dt_(dt) {
  std::vector<std::string> problems;
  if (!(dx > 0.0)) problems.push_back("dx must be positive");
  if (!(dt > 0.0)) problems.push_back("dt must be positive");
  if (!(a < 0.0 && b > 0.0)) problems.push_back("domain [a, b] must contain the interface x = 0");
  if (!problems.empty()) throw ConfigError(problems);

  const long left = std::max(1L, std::lround(-a / dx));
  const long right = std::max(1L, std::lround(b / dx));
  a_ = -static_cast<double>(left) * dx;
  b_ = static_cast<double>(right) * dx;
  shift_ = a_ - a;
  cells_ = static_cast<int>(left + right);
  interface_index_ = static_cast<int>(left) - 1;
}

std::vector<double> ConvectionGrid::centers() const {
  std::vector<double> x(static_cast<std::size_t>(cells_));
  for (int i = 0; i < cells_; ++i) x[static_cast<std::size_t>(i)] = center(i);
  return x;
}

void check_cfl(const InterfaceCoefficient& coef, const ConvectionGrid& grid) {
  const double ratio = grid.dt() / grid.dx();
  const double worst = std::max(std::max(coef.speed_minus(-1.0), coef.speed_minus(1.0)),
                                std::max(coef.speed_plus(-1.0), coef.speed_plus(1.0))) *
                       ratio;
  if (worst > 1.0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "CFL violated: max_z c(z) dt/dx = " << worst << " > 1 at z = +/-1 (dt = " << grid.dt()
        << ", dx = " << grid.dx() << ")";
    throw ConfigError(msg.str());
  }
}

LambdaMatrices build_lambda_matrices(const InterfaceCoefficient& coef, const ConvectionGrid& grid,
                                     const gpc::OrthonormalBasis& basis,
                                     const gpc::QuadratureRule& rule) {
  check_cfl(coef, grid);
  const double ratio = grid.dt() / grid.dx();
  LambdaMatrices out;
  if (coef.sigma == 0.0) {
    // Constant speeds: the Galerkin matrix is exactly a multiple of I.
    out.minus = gpc::GalerkinMatrix::scaled_identity(basis.size(), coef.c_minus * ratio);
    out.plus = gpc::GalerkinMatrix::scaled_identity(basis.size(), coef.c_plus * ratio);
  } else {
    out.minus = gpc::galerkin_matrix([&](double z) { return coef.speed_minus(z) * ratio; }, basis, rule);
    out.plus = gpc::galerkin_matrix([&](double z) { return coef.speed_plus(z) * ratio; }, basis, rule);
  }
  out.inflow = coef.transmission == Transmission::conserve_flux ? out.minus : out.plus;
  return out;
}

GpcField1D upwind_update(const GpcField1D& field, const GpcField1D& faces, const LambdaMatrices& lambdas,
                         const ConvectionGrid& grid, int threads) {
  const int cells = grid.cells();
  const std::size_t modes = field.modes();
  if (field.cells() != static_cast<std::size_t>(cells) || lambdas.minus.size() != modes ||
      faces.cells() != field.cells() || faces.modes() != modes) {
    throw UsageError("upwind_update: field shape does not match grid and gPC order");
  }
  const int iface = grid.interface_index();

  // flux[e] leaves cell e-1 through edge e; edge 0 carries the zero inflow.
  std::vector<double> flux((static_cast<std::size_t>(cells) + 1) * modes, 0.0);
  std::vector<double> iface_in(modes, 0.0);

#pragma omp parallel for num_threads(threads) if (threads > 1) schedule(static)
  for (int e = 1; e <= cells; ++e) {
    const auto& lam = (e - 1 <= iface) ? lambdas.minus : lambdas.plus;
    lam.apply(faces.cell(static_cast<std::size_t>(e - 1)),
              std::span<double>(flux.data() + static_cast<std::size_t>(e) * modes, modes));
  }
  lambdas.inflow.apply(faces.cell(static_cast<std::size_t>(iface)), iface_in);

  GpcField1D next(field.cells(), modes);
#pragma omp parallel for num_threads(threads) if (threads > 1) schedule(static)
  for (int i = 0; i < cells; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const double* out_flux = flux.data() + (ui + 1) * modes;
    const double* in_flux = (i == iface + 1) ? iface_in.data() : flux.data() + ui * modes;
    for (std::size_t k = 0; k < modes; ++k) {
      next(ui, k) = field(ui, k) - (out_flux[k] - in_flux[k]);
    }
  }
  return next;
}

GpcField1D step_first_order(const GpcField1D& field, const LambdaMatrices& lambdas,
                            const ConvectionGrid& grid, int threads) {
  return upwind_update(field, field, lambdas, grid, threads);
}

NodalLambdas nodal_lambdas(const InterfaceCoefficient& coef, const ConvectionGrid& grid, double z) {
  const double ratio = grid.dt() / grid.dx();
  NodalLambdas lam;
  lam.minus = coef.speed_minus(z) * ratio;
  lam.plus = coef.speed_plus(z) * ratio;
  lam.inflow = coef.transmission == Transmission::conserve_flux ? lam.minus : lam.plus;
  lam.factor = coef.interface_factor(z);
  return lam;
}

void nodal_slopes(std::span<const double> u, const ConvectionGrid& grid, LimiterMap map, double factor,
                  std::span<double> slopes) {
  const int cells = grid.cells();
  const int iface = grid.interface_index();
  const double dx = grid.dx();
  for (int i = 0; i < cells; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (i == 0 || i == cells - 1) {
      slopes[ui] = 0.0;
    } else if (i == iface) {
      // Neighbour across the interface, mapped back through u(0+) = factor u(0-).
      slopes[ui] = bap_slope((u[ui] - u[ui - 1]) / dx, (u[ui + 1] / factor - u[ui]) / dx, map);
    } else if (i == iface + 1) {
      slopes[ui] = bap_slope((u[ui] - factor * u[ui - 1]) / dx, (u[ui + 1] - u[ui]) / dx, map);
    } else {
      slopes[ui] = bap_slope((u[ui] - u[ui - 1]) / dx, (u[ui + 1] - u[ui]) / dx, map);
    }
  }
}

void nodal_edge_fluxes(std::span<const double> u, const NodalLambdas& lam, const ConvectionGrid& grid,
                       int order, LimiterMap map, std::span<double> flux_out,
                       std::span<double> flux_in) {
  const int cells = grid.cells();
  const int iface = grid.interface_index();
  const double half_dx = 0.5 * grid.dx();

  std::vector<double> slopes;
  if (order == 2) {
    slopes.resize(u.size());
    nodal_slopes(u, grid, map, lam.factor, slopes);
  }
  flux_out[0] = 0.0;
  flux_in[0] = 0.0;
  for (int e = 1; e <= cells; ++e) {
    const auto up = static_cast<std::size_t>(e - 1);
    const double face = order == 2 ? u[up] + slopes[up] * half_dx : u[up];
    const double lam_up = (e - 1 <= iface) ? lam.minus : lam.plus;
    const auto ue = static_cast<std::size_t>(e);
    flux_out[ue] = lam_up * face;
    flux_in[ue] = (e == iface + 1) ? lam.inflow * face : flux_out[ue];
  }
}

GpcField1D project_slopes(const GpcField1D& field, const InterfaceCoefficient& coef, const ConvectionGrid& grid,
                          const gpc::NodalTable& table, LimiterMap map, int threads) {
  const int cells = grid.cells();
  const std::size_t modes = field.modes();
  const std::size_t nodes = table.nodes();
  if (field.cells() != static_cast<std::size_t>(cells) || table.modes() != modes) {
    throw UsageError("project_slopes: field shape does not match grid and gPC order");
  }
  const auto n_cells = static_cast<std::size_t>(cells);

  // values[m][i], slopes[m][i]
  std::vector<double> values(nodes * n_cells);
  std::vector<double> slopes(nodes * n_cells);
#pragma omp parallel for num_threads(threads) if (threads > 1) schedule(static)
  for (int i = 0; i < cells; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    for (std::size_t m = 0; m < nodes; ++m) values[m * n_cells + ui] = table.value_at(field.cell(ui), m);
  }
  const int n_nodes = static_cast<int>(nodes);
#pragma omp parallel for num_threads(threads) if (threads > 1) schedule(static)
  for (int m = 0; m < n_nodes; ++m) {
    const auto um = static_cast<std::size_t>(m);
    nodal_slopes(std::span<const double>(values.data() + um * n_cells, n_cells), grid, map,
                 coef.interface_factor(table.rule().nodes[um]), std::span<double>(slopes.data() + um * n_cells, n_cells));
  }

  GpcField1D out(field.cells(), modes);
#pragma omp parallel for num_threads(threads) if (threads > 1) schedule(static)
  for (int i = 0; i < cells; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    for (std::size_t m = 0; m < nodes; ++m) table.accumulate(slopes[m * n_cells + ui], m, out.cell(ui));
  }
  return out;
}

GpcField1D step_second_order(const GpcField1D& field, const InterfaceCoefficient& coef,
                             const LambdaMatrices& lambdas, const ConvectionGrid& grid,
                             const gpc::NodalTable& table, LimiterMap map, int threads) {
  const GpcField1D slopes = project_slopes(field, coef, grid, table, map, threads);
  const double half_dx = 0.5 * grid.dx();
  GpcField1D faces(field.cells(), field.modes());
  auto f = faces.raw();
  const auto u = field.raw();
  const auto s = slopes.raw();
  for (std::size_t n = 0; n < f.size(); ++n) f[n] = u[n] + s[n] * half_dx;
  return upwind_update(field, faces, lambdas, grid, threads);
}

DeterministicConvection::DeterministicConvection(const InterfaceCoefficient& coef,
                                                 const ConvectionGrid& grid, double z)
    : grid_(grid), lam_(nodal_lambdas(coef, grid, z)) {
  check_cfl(coef, grid);
}

std::vector<double> DeterministicConvection::step(std::span<const double> u, int order,
                                                  LimiterMap map) const {
  const auto n = static_cast<std::size_t>(grid_.cells());
  if (u.size() != n) throw UsageError("DeterministicConvection::step: size mismatch");
  std::vector<double> flux_out(n + 1);
  std::vector<double> flux_in(n + 1);
  nodal_edge_fluxes(u, lam_, grid_, order, map, flux_out, flux_in);
  std::vector<double> next(n);
  for (std::size_t i = 0; i < n; ++i) next[i] = u[i] - (flux_out[i + 1] - flux_in[i]);
  return next;
}

GpcField1D project_initial(const InitialProfile& u0, const ConvectionGrid& grid, std::size_t modes) {
  GpcField1D field(static_cast<std::size_t>(grid.cells()), modes);
  for (int i = 0; i < grid.cells(); ++i) field(static_cast<std::size_t>(i), 0) = u0(grid.center(i));
  return field;
}

}  // namespace stochhyp::convection
