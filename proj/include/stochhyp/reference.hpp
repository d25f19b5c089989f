#pragma once

// Serial reference implementations of the hot kernels. They follow the
// textbook form of each update (three-branch convection formula, node-by-node
// projection of the deterministic right-hand side) and are kept for testing
// and benchmarking the OpenMP kernels against.

#include "stochhyp/convection.hpp"
#include "stochhyp/liouville.hpp"

namespace stochhyp::reference {

/// U_i <- (I - lam_i) U_i + lam_in U_{i-1}, branch by branch.
GpcField1D convection_step_first_order(const GpcField1D& field, const convection::LambdaMatrices& lambdas,
                                       const convection::ConvectionGrid& grid);

/// Node-by-node slope projection, then the three-branch update on U + S dx/2.
GpcField1D convection_step_second_order(const GpcField1D& field, const convection::InterfaceCoefficient& coef,
                                        const convection::LambdaMatrices& lambdas,
                                        const convection::ConvectionGrid& grid, const gpc::NodalTable& table,
                                        LimiterMap map);

/// Loop over nodes: evaluate, deterministic RHS on the whole grid, accumulate projection.
void liouville_galerkin_rhs(const liouville::GalerkinLiouville& solver, const GpcField2D& field,
                            GpcField2D& out);

}  // namespace stochhyp::reference
