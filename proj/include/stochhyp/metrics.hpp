#pragma once

// Norms and error reports.
//   l1:     sum_i |u_i| |cell|
//   H-norm: sqrt( int ||u(z)||_l1^2 rho(z) dz )

#include <span>
#include <vector>

#include "stochhyp/convection.hpp"
#include "stochhyp/fields.hpp"
#include "stochhyp/gpc_core.hpp"

namespace stochhyp::metrics {

double l1_norm(std::span<const double> values, double cell_measure);

/// l1 norm of a - b.
double l1_distance(std::span<const double> a, std::span<const double> b, double cell_measure);

/// Rule size for H-norm quadrature of an order-K field.
inline int default_h_points(int max_order) { return max_order + 1 > 16 ? max_order + 1 : 16; }

/// H-norm of a gPC field evaluated at the nodes of `rule`.
double h_norm(const GpcField1D& field, const gpc::QuadratureRule& rule, double dx);

/// Coefficient-wise l1 distance; the shorter expansion is zero-padded.
double coefficient_l1_distance(std::span<const double> a, std::size_t modes_a,
                               std::span<const double> b, std::size_t modes_b, double cell_measure);

/// H-norm of a - b, both gPC fields on the same cells (orders may differ).
double h_distance(std::span<const double> a, std::size_t modes_a, std::span<const double> b,
                  std::size_t modes_b, double cell_measure);

/// Errors of a stochastic solution against a reference, plus run metadata.
/// l1 is the z-averaged spatial l1 error, h_norm the H-norm error, and the
/// moment entries the l1 errors of expectation and variance.
struct ErrorReport {
  double l1 = 0.0;
  double h_norm = 0.0;
  double l1_expectation = 0.0;
  double l1_variance = 0.0;
  int max_order = 0;
  double dx = 0.0;
  double dt = 0.0;
  double final_time = 0.0;
  int order = 1;
};

/// Rule used to integrate errors against the analytic convection solution,
/// whose z-dependence is only piecewise smooth.
const gpc::QuadratureRule& error_rule();

/// gPC field vs the analytic solution at time t.
ErrorReport convection_error(const GpcField1D& field, const convection::AnalyticConvectionSolution& exact,
                             const convection::ConvectionGrid& grid, double t);

/// Nodal samples (samples[m][i] at rule node m) vs the analytic solution; the
/// z-integrals use the sampling rule itself.
ErrorReport convection_error_nodal(const std::vector<std::vector<double>>& samples,
                                   const gpc::QuadratureRule& rule,
                                   const convection::AnalyticConvectionSolution& exact,
                                   const convection::ConvectionGrid& grid, double t);

/// Deterministic solution at a single z vs the analytic solution at that z.
/// Every l1 entry is the same spatial error; the variance error is zero.
ErrorReport convection_error_at(std::span<const double> u, double z,
                                const convection::AnalyticConvectionSolution& exact,
                                const convection::ConvectionGrid& grid, double t);

/// Exact moments on the grid centers.
MomentField analytic_moments(const convection::AnalyticConvectionSolution& exact,
                             const convection::ConvectionGrid& grid, double t);

}  // namespace stochhyp::metrics
