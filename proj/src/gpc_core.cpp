#include "stochhyp/gpc_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stochhyp/errors.hpp"

namespace stochhyp::gpc {

namespace {

constexpr double kNewtonTolerance = 1e-15;
constexpr int kNewtonMaxIterations = 100;

void check_z(double z) {
  if (!(std::abs(z) <= 1.0)) {
    throw DomainError("z = " + std::to_string(z) + " outside [-1, 1]");
  }
}

// Standard Legendre L_n(x) and its derivative by the three-term recurrence.
void legendre_with_derivative(int n, double x, double& value, double& derivative) {
  double prev = 1.0;
  double curr = x;
  if (n == 0) {
    value = 1.0;
    derivative = 0.0;
    return;
  }
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0) * x * curr - k * prev) / (k + 1.0);
    prev = curr;
    curr = next;
  }
  value = curr;
  derivative = n * (x * curr - prev) / (x * x - 1.0);
}

}  // namespace

OrthonormalBasis::OrthonormalBasis(int max_order) : max_order_(max_order) {
  if (max_order < 0) throw DomainError("gPC order must be non-negative");
}

double OrthonormalBasis::eval(int k, double z) const {
  if (k < 0 || k > max_order_) {
    throw DomainError("basis index " + std::to_string(k) + " outside [0, " +
                      std::to_string(max_order_) + "]");
  }
  check_z(z);
  double prev = 1.0;
  double curr = z;
  if (k == 0) return 1.0;
  for (int n = 1; n < k; ++n) {
    const double next = ((2.0 * n + 1.0) * z * curr - n * prev) / (n + 1.0);
    prev = curr;
    curr = next;
  }
  return std::sqrt(2.0 * k + 1.0) * curr;
}

void OrthonormalBasis::eval_all(double z, std::span<double> out) const {
  if (out.size() != size()) throw UsageError("eval_all: output size must be K+1");
  check_z(z);
  double prev = 1.0;
  double curr = z;
  out[0] = 1.0;
  if (max_order_ == 0) return;
  out[1] = std::sqrt(3.0) * z;
  for (int n = 1; n < max_order_; ++n) {
    const double next = ((2.0 * n + 1.0) * z * curr - n * prev) / (n + 1.0);
    prev = curr;
    curr = next;
    out[n + 1] = std::sqrt(2.0 * (n + 1) + 1.0) * curr;
  }
}

QuadratureRule gauss_rule(int points) {
  if (points <= 0) throw DomainError("Gauss rule needs at least one point");
  const auto m = static_cast<std::size_t>(points);
  QuadratureRule rule;
  rule.nodes.assign(m, 0.0);
  rule.weights.assign(m, 0.0);

  // Roots come in +/- pairs; solve for the positive half and mirror.
  const std::size_t half = (m + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (points + 0.5));
    double value = 0.0;
    double derivative = 0.0;
    for (int it = 0; it < kNewtonMaxIterations; ++it) {
      legendre_with_derivative(points, x, value, derivative);
      const double step = value / derivative;
      x -= step;
      if (std::abs(step) < kNewtonTolerance) break;
    }
    if (m % 2 == 1 && i == half - 1) x = 0.0;
    legendre_with_derivative(points, x, value, derivative);
    // 2 / ((1 - x^2) L'^2), times the density 1/2.
    const double w = 1.0 / ((1.0 - x * x) * derivative * derivative);
    rule.nodes[i] = -x;
    rule.nodes[m - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[m - 1 - i] = w;
  }
  return rule;
}

QuadratureRule composite_gauss_rule(int panels, int points) {
  if (panels <= 0) throw DomainError("composite rule needs at least one panel");
  const QuadratureRule base = gauss_rule(points);
  QuadratureRule rule;
  const double width = 2.0 / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = -1.0 + (p + 0.5) * width;
    for (std::size_t q = 0; q < base.count(); ++q) {
      rule.nodes.push_back(mid + 0.5 * width * base.nodes[q]);
      rule.weights.push_back(base.weights[q] / panels);
    }
  }
  return rule;
}

QuadratureRule point_rule(double z) {
  check_z(z);
  return QuadratureRule{{z}, {1.0}};
}

GalerkinMatrix GalerkinMatrix::scaled_identity(std::size_t n, double scale) {
  GalerkinMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = scale;
  return a;
}

void GalerkinMatrix::apply(std::span<const double> in, std::span<double> out) const {
  for (std::size_t r = 0; r < n_; ++r) {
    const double* row_ptr = entries_.data() + r * n_;
    double acc = 0.0;
    for (std::size_t c = 0; c < n_; ++c) acc += row_ptr[c] * in[c];
    out[r] = acc;
  }
}

double GalerkinMatrix::asymmetry() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = r + 1; c < n_; ++c) {
      worst = std::max(worst, std::abs((*this)(r, c) - (*this)(c, r)));
    }
  }
  return worst;
}

GalerkinMatrix galerkin_matrix(const std::function<double(double)>& coef,
                               const OrthonormalBasis& basis, const QuadratureRule& rule) {
  const std::size_t n = basis.size();
  if (rule.count() < n) {
    throw UsageError("galerkin_matrix: quadrature needs at least K+1 = " + std::to_string(n) +
                     " nodes, got " + std::to_string(rule.count()));
  }
  GalerkinMatrix a(n);
  std::vector<double> p(n);
  for (std::size_t q = 0; q < rule.count(); ++q) {
    basis.eval_all(rule.nodes[q], p);
    const double cw = coef(rule.nodes[q]) * rule.weights[q];
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t m = k; m < n; ++m) a(k, m) += cw * p[k] * p[m];
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t m = 0; m < k; ++m) a(k, m) = a(m, k);
  }
  return a;
}

GpcVector project(std::span<const double> samples, const OrthonormalBasis& basis,
                  const QuadratureRule& rule) {
  if (samples.size() != rule.count()) {
    throw UsageError("project: " + std::to_string(samples.size()) + " samples for " +
                     std::to_string(rule.count()) + " nodes");
  }
  GpcVector coeffs(basis.size(), 0.0);
  std::vector<double> p(basis.size());
  for (std::size_t q = 0; q < rule.count(); ++q) {
    basis.eval_all(rule.nodes[q], p);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      coeffs[k] += samples[q] * p[k] * rule.weights[q];
    }
  }
  return coeffs;
}

double evaluate(std::span<const double> coeffs, double z) {
  check_z(z);
  if (coeffs.empty()) return 0.0;
  double acc = coeffs[0];
  double prev = 1.0;
  double curr = z;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    acc += coeffs[k] * std::sqrt(2.0 * static_cast<double>(k) + 1.0) * curr;
    const double n = static_cast<double>(k);
    const double next = ((2.0 * n + 1.0) * z * curr - n * prev) / (n + 1.0);
    prev = curr;
    curr = next;
  }
  return acc;
}

Moments moments(std::span<const double> coeffs) {
  Moments m;
  if (coeffs.empty()) return m;
  m.expectation = coeffs[0];
  for (std::size_t k = 1; k < coeffs.size(); ++k) m.variance += coeffs[k] * coeffs[k];
  return m;
}

NodalTable::NodalTable(const OrthonormalBasis& basis, const QuadratureRule& rule)
    : modes_(basis.size()),
      nodes_(rule.count()),
      rule_(rule),
      values_(modes_ * nodes_),
      weighted_(modes_ * nodes_) {
  for (std::size_t q = 0; q < nodes_; ++q) {
    std::span<double> row(values_.data() + q * modes_, modes_);
    basis.eval_all(rule.nodes[q], row);
    for (std::size_t k = 0; k < modes_; ++k) weighted_[q * modes_ + k] = row[k] * rule.weights[q];
  }
}

}  // namespace stochhyp::gpc
