#include "stochhyp/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "stochhyp/errors.hpp"

namespace stochhyp::metrics {

double l1_norm(std::span<const double> values, double cell_measure) {
  double acc = 0.0;
  for (double v : values) acc += std::abs(v);
  return acc * cell_measure;
}

double l1_distance(std::span<const double> a, std::span<const double> b, double cell_measure) {
  if (a.size() != b.size()) throw UsageError("l1_distance: size mismatch");
  double acc = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) acc += std::abs(a[n] - b[n]);
  return acc * cell_measure;
}

double h_norm(const GpcField1D& field, const gpc::QuadratureRule& rule, double dx) {
  const gpc::NodalTable table(gpc::OrthonormalBasis(static_cast<int>(field.modes()) - 1), rule);
  double acc = 0.0;
  for (std::size_t m = 0; m < rule.count(); ++m) {
    double l1 = 0.0;
    for (std::size_t c = 0; c < field.cells(); ++c) l1 += std::abs(table.value_at(field.cell(c), m));
    l1 *= dx;
    acc += rule.weights[m] * l1 * l1;
  }
  return std::sqrt(acc);
}

double coefficient_l1_distance(std::span<const double> a, std::size_t modes_a,
                               std::span<const double> b, std::size_t modes_b, double cell_measure) {
  const std::size_t cells = a.size() / modes_a;
  if (b.size() / modes_b != cells) throw UsageError("coefficient_l1_distance: cell count mismatch");
  const std::size_t modes = std::max(modes_a, modes_b);
  double acc = 0.0;
  for (std::size_t c = 0; c < cells; ++c) {
    for (std::size_t k = 0; k < modes; ++k) {
      const double ua = k < modes_a ? a[c * modes_a + k] : 0.0;
      const double ub = k < modes_b ? b[c * modes_b + k] : 0.0;
      acc += std::abs(ua - ub);
    }
  }
  return acc * cell_measure;
}

double h_distance(std::span<const double> a, std::size_t modes_a, std::span<const double> b,
                  std::size_t modes_b, double cell_measure) {
  const std::size_t cells = a.size() / modes_a;
  if (b.size() / modes_b != cells) throw UsageError("h_distance: cell count mismatch");
  const std::size_t modes = std::max(modes_a, modes_b);
  const auto rule = gpc::gauss_rule(default_h_points(static_cast<int>(modes) - 1));
  const gpc::NodalTable table(gpc::OrthonormalBasis(static_cast<int>(modes) - 1), rule);
  std::vector<double> diff(modes);
  std::vector<double> spatial(rule.count(), 0.0);
  for (std::size_t c = 0; c < cells; ++c) {
    for (std::size_t k = 0; k < modes; ++k) {
      const double ua = k < modes_a ? a[c * modes_a + k] : 0.0;
      const double ub = k < modes_b ? b[c * modes_b + k] : 0.0;
      diff[k] = ua - ub;
    }
    for (std::size_t m = 0; m < rule.count(); ++m) spatial[m] += std::abs(table.value_at(diff, m));
  }
  double acc = 0.0;
  for (std::size_t m = 0; m < rule.count(); ++m) {
    const double l1 = spatial[m] * cell_measure;
    acc += rule.weights[m] * l1 * l1;
  }
  return std::sqrt(acc);
}

const gpc::QuadratureRule& error_rule() {
  static const gpc::QuadratureRule rule = gpc::composite_gauss_rule(32, 8);
  return rule;
}

MomentField analytic_moments(const convection::AnalyticConvectionSolution& exact,
                             const convection::ConvectionGrid& grid, double t) {
  MomentField out;
  out.expectation.resize(static_cast<std::size_t>(grid.cells()));
  out.variance.resize(out.expectation.size());
  for (int i = 0; i < grid.cells(); ++i) {
    const auto m = exact.moments(grid.center(i), t);
    out.expectation[static_cast<std::size_t>(i)] = m.expectation;
    out.variance[static_cast<std::size_t>(i)] = m.variance;
  }
  return out;
}

namespace {

// Fills l1 and h_norm from per-node spatial errors.
void integrate_node_errors(const std::vector<double>& node_l1, const gpc::QuadratureRule& rule,
                           ErrorReport& report) {
  double l1 = 0.0;
  double h2 = 0.0;
  for (std::size_t m = 0; m < rule.count(); ++m) {
    l1 += rule.weights[m] * node_l1[m];
    h2 += rule.weights[m] * node_l1[m] * node_l1[m];
  }
  report.l1 = l1;
  report.h_norm = std::sqrt(h2);
}

}  // namespace

ErrorReport convection_error(const GpcField1D& field, const convection::AnalyticConvectionSolution& exact,
                             const convection::ConvectionGrid& grid, double t) {
  ErrorReport report;
  report.max_order = static_cast<int>(field.modes()) - 1;
  report.dx = grid.dx();
  report.dt = grid.dt();
  report.final_time = t;

  const auto& rule = error_rule();
  const gpc::NodalTable table(gpc::OrthonormalBasis(report.max_order), rule);
  std::vector<double> node_l1(rule.count(), 0.0);
  for (int i = 0; i < grid.cells(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const double x = grid.center(i);
    for (std::size_t m = 0; m < rule.count(); ++m) {
      node_l1[m] += std::abs(table.value_at(field.cell(ui), m) - exact.value(x, t, rule.nodes[m]));
    }
  }
  for (double& v : node_l1) v *= grid.dx();
  integrate_node_errors(node_l1, rule, report);

  const auto numeric = moment_field(field);
  const auto reference = analytic_moments(exact, grid, t);
  report.l1_expectation = l1_distance(numeric.expectation, reference.expectation, grid.dx());
  report.l1_variance = l1_distance(numeric.variance, reference.variance, grid.dx());
  return report;
}

ErrorReport convection_error_nodal(const std::vector<std::vector<double>>& samples,
                                   const gpc::QuadratureRule& rule,
                                   const convection::AnalyticConvectionSolution& exact,
                                   const convection::ConvectionGrid& grid, double t) {
  if (samples.size() != rule.count()) throw UsageError("convection_error_nodal: one sample set per node");
  ErrorReport report;
  report.dx = grid.dx();
  report.dt = grid.dt();
  report.final_time = t;

  const auto cells = static_cast<std::size_t>(grid.cells());
  std::vector<double> node_l1(rule.count(), 0.0);
  MomentField numeric;
  numeric.expectation.assign(cells, 0.0);
  numeric.variance.assign(cells, 0.0);
  for (std::size_t m = 0; m < rule.count(); ++m) {
    for (std::size_t i = 0; i < cells; ++i) {
      const double u = samples[m][i];
      node_l1[m] += std::abs(u - exact.value(grid.center(static_cast<int>(i)), t, rule.nodes[m]));
      numeric.expectation[i] += rule.weights[m] * u;
      numeric.variance[i] += rule.weights[m] * u * u;
    }
    node_l1[m] *= grid.dx();
  }
  for (std::size_t i = 0; i < cells; ++i) numeric.variance[i] -= numeric.expectation[i] * numeric.expectation[i];
  integrate_node_errors(node_l1, rule, report);

  const auto reference = analytic_moments(exact, grid, t);
  report.l1_expectation = l1_distance(numeric.expectation, reference.expectation, grid.dx());
  report.l1_variance = l1_distance(numeric.variance, reference.variance, grid.dx());
  return report;
}

ErrorReport convection_error_at(std::span<const double> u, double z,
                                const convection::AnalyticConvectionSolution& exact,
                                const convection::ConvectionGrid& grid, double t) {
  if (u.size() != static_cast<std::size_t>(grid.cells())) throw UsageError("convection_error_at: size mismatch");
  ErrorReport report;
  report.dx = grid.dx();
  report.dt = grid.dt();
  report.final_time = t;
  double acc = 0.0;
  for (int i = 0; i < grid.cells(); ++i) acc += std::abs(u[static_cast<std::size_t>(i)] - exact.value(grid.center(i), t, z));
  report.l1 = acc * grid.dx();
  report.h_norm = report.l1;
  report.l1_expectation = report.l1;
  return report;
}

}  // namespace stochhyp::metrics
