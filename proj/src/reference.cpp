#include "stochhyp/reference.hpp"

#include "stochhyp/errors.hpp"

namespace stochhyp::reference {

GpcField1D convection_step_first_order(const GpcField1D& field, const convection::LambdaMatrices& lambdas,
                                       const convection::ConvectionGrid& grid) {
  const std::size_t modes = field.modes();
  const int iface = grid.interface_index();
  GpcField1D next(field.cells(), modes);
  std::vector<double> own(modes);
  std::vector<double> upwind(modes);
  std::vector<double> zero(modes, 0.0);
  for (int i = 0; i < grid.cells(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const auto& lam_own = i <= iface ? lambdas.minus : lambdas.plus;
    const auto& lam_in = i <= iface ? lambdas.minus : (i == iface + 1 ? lambdas.inflow : lambdas.plus);
    lam_own.apply(field.cell(ui), own);
    if (i == 0) {
      lam_in.apply(zero, upwind);
    } else {
      lam_in.apply(field.cell(ui - 1), upwind);
    }
    for (std::size_t k = 0; k < modes; ++k) next(ui, k) = field(ui, k) - own[k] + upwind[k];
  }
  return next;
}

GpcField1D convection_step_second_order(const GpcField1D& field, const convection::InterfaceCoefficient& coef,
                                        const convection::LambdaMatrices& lambdas,
                                        const convection::ConvectionGrid& grid, const gpc::NodalTable& table,
                                        LimiterMap map) {
  const std::size_t cells = field.cells();
  const std::size_t modes = field.modes();
  GpcField1D slopes(cells, modes);
  std::vector<double> nodal(cells);
  std::vector<double> nodal_slopes(cells);
  for (std::size_t m = 0; m < table.nodes(); ++m) {
    for (std::size_t i = 0; i < cells; ++i) nodal[i] = table.value_at(field.cell(i), m);
    convection::nodal_slopes(nodal, grid, map, coef.interface_factor(table.rule().nodes[m]), nodal_slopes);
    for (std::size_t i = 0; i < cells; ++i) table.accumulate(nodal_slopes[i], m, slopes.cell(i));
  }

  // Three-branch update on the reconstructed edge values.
  const int iface = grid.interface_index();
  GpcField1D next(cells, modes);
  std::vector<double> face(modes);
  std::vector<double> face_up(modes, 0.0);
  std::vector<double> own(modes);
  std::vector<double> upwind(modes);
  for (int i = 0; i < grid.cells(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    for (std::size_t k = 0; k < modes; ++k) face[k] = field(ui, k) + slopes(ui, k) * (0.5 * grid.dx());
    const auto& lam_own = i <= iface ? lambdas.minus : lambdas.plus;
    const auto& lam_in = i <= iface ? lambdas.minus : (i == iface + 1 ? lambdas.inflow : lambdas.plus);
    lam_own.apply(face, own);
    lam_in.apply(face_up, upwind);
    for (std::size_t k = 0; k < modes; ++k) next(ui, k) = field(ui, k) - own[k] + upwind[k];
    face_up = face;
  }
  return next;
}

void liouville_galerkin_rhs(const liouville::GalerkinLiouville& solver, const GpcField2D& field,
                            GpcField2D& out) {
  const auto& table = solver.table();
  const std::size_t cells = field.cells();
  out = GpcField2D(field.nx(), field.nv(), field.modes());
  std::vector<double> nodal(cells);
  std::vector<double> rhs(cells);
  for (std::size_t m = 0; m < table.nodes(); ++m) {
    for (std::size_t c = 0; c < cells; ++c) {
      nodal[c] = table.value_at(field.raw().subspan(c * field.modes(), field.modes()), m);
    }
    solver.scheme().rhs_deterministic(nodal, solver.context(m), rhs);
    for (std::size_t c = 0; c < cells; ++c) {
      table.accumulate(rhs[c], m, out.raw().subspan(c * field.modes(), field.modes()));
    }
  }
}

}  // namespace stochhyp::reference
