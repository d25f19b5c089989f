#pragma once

// Shared stochastic machinery: normalized Legendre chaos on z ~ U(-1, 1),
// Gauss-Legendre rules, Galerkin matrices, projection and moments.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace stochhyp::gpc {

/// Uniform density on [-1, 1].
inline constexpr double kDensity = 0.5;

/// Normalized Legendre polynomials P_k = sqrt(2k+1) L_k, orthonormal under
/// the uniform density on [-1, 1].
class OrthonormalBasis {
 public:
  explicit OrthonormalBasis(int max_order);

  int max_order() const noexcept { return max_order_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(max_order_) + 1; }

  /// P_k(z). Throws DomainError for k outside [0, K] or |z| > 1.
  double eval(int k, double z) const;

  /// P_0(z), ..., P_K(z) into `out` (size K+1).
  void eval_all(double z, std::span<double> out) const;

 private:
  int max_order_;
};

/// Quadrature nodes and weights; weights absorb the density so they sum to one.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t count() const noexcept { return nodes.size(); }
};

/// M-point Gauss-Legendre rule on (-1, 1), exact to degree 2M-1 under the density.
QuadratureRule gauss_rule(int points);

/// `panels` equal sub-intervals of [-1, 1], each with a `points`-node Gauss
/// rule. Robust for integrands that are only piecewise smooth in z.
QuadratureRule composite_gauss_rule(int panels, int points);

/// Single node at z with unit weight. Used to run the stochastic machinery at a frozen z.
QuadratureRule point_rule(double z);

/// Default rule size for Galerkin assembly at order K.
inline int default_assembly_points(int max_order) { return 2 * max_order + 2; }

/// Dense square matrix, row-major.
class GalerkinMatrix {
 public:
  GalerkinMatrix() = default;
  explicit GalerkinMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

  static GalerkinMatrix scaled_identity(std::size_t n, double scale);

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t row, std::size_t col) { return entries_[row * n_ + col]; }
  double operator()(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
  std::span<const double> row(std::size_t r) const { return {entries_.data() + r * n_, n_}; }

  /// out = A * in
  void apply(std::span<const double> in, std::span<double> out) const;

  /// max |A - A^T|
  double asymmetry() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

/// entries[k][m] = sum_q coef(z_q) P_k(z_q) P_m(z_q) w_q.
/// Requires rule.count() >= K+1.
GalerkinMatrix galerkin_matrix(const std::function<double(double)>& coef,
                               const OrthonormalBasis& basis, const QuadratureRule& rule);

using GpcVector = std::vector<double>;

/// coeffs[k] = sum_m f(z_m) P_k(z_m) w_m for samples f(z_m) aligned with rule nodes.
GpcVector project(std::span<const double> samples, const OrthonormalBasis& basis,
                  const QuadratureRule& rule);

/// sum_k coeffs[k] P_k(z). Throws DomainError for |z| > 1.
double evaluate(std::span<const double> coeffs, double z);

struct Moments {
  double expectation = 0.0;
  double variance = 0.0;
};

/// Mean is mode 0; variance is the energy in modes 1..K.
Moments moments(std::span<const double> coeffs);

/// P_k(z_m) tabulated once per (basis, rule) pair, with the projection
/// weights P_k(z_m) w_m alongside. Both solvers evaluate and project through
/// this table so that node-wise and Galerkin paths share arithmetic.
class NodalTable {
 public:
  NodalTable(const OrthonormalBasis& basis, const QuadratureRule& rule);

  std::size_t modes() const noexcept { return modes_; }
  std::size_t nodes() const noexcept { return nodes_; }
  const QuadratureRule& rule() const noexcept { return rule_; }

  double basis_at(std::size_t node, std::size_t k) const { return values_[node * modes_ + k]; }
  double projector(std::size_t node, std::size_t k) const { return weighted_[node * modes_ + k]; }

  /// Value of the expansion at node m.
  double value_at(std::span<const double> coeffs, std::size_t node) const {
    double acc = 0.0;
    const double* p = values_.data() + node * modes_;
    for (std::size_t k = 0; k < modes_; ++k) acc += coeffs[k] * p[k];
    return acc;
  }

  /// coeffs[k] += sample * P_k(z_m) w_m
  void accumulate(double sample, std::size_t node, std::span<double> coeffs) const {
    const double* pw = weighted_.data() + node * modes_;
    for (std::size_t k = 0; k < modes_; ++k) coeffs[k] += sample * pw[k];
  }

 private:
  std::size_t modes_;
  std::size_t nodes_;
  QuadratureRule rule_;
  std::vector<double> values_;
  std::vector<double> weighted_;
};

}  // namespace stochhyp::gpc
