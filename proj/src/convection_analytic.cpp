#include <algorithm>
#include <cmath>

#include "stochhyp/convection.hpp"

namespace stochhyp::convection {

namespace {

constexpr int kPiecePoints = 20;

void keep_if_inside(double z, std::vector<double>& out) {
  if (std::isfinite(z) && z > -1.0 && z < 1.0) out.push_back(z);
}

// Roots of a z^2 + b z + c = 0 (or the linear / constant degenerations).
void add_roots(double a, double b, double c, std::vector<double>& out) {
  if (a == 0.0) {
    if (b != 0.0) keep_if_inside(-c / b, out);
    return;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return;
  const double sq = std::sqrt(disc);
  // Cancellation-free pair.
  const double q = -0.5 * (b + std::copysign(sq, b));
  if (q != 0.0) {
    keep_if_inside(q / a, out);
    keep_if_inside(c / q, out);
  } else {
    keep_if_inside(0.0, out);
  }
}

}  // namespace

double AnalyticConvectionSolution::value(double x, double t, double z) const {
  const double cm = coef_.speed_minus(z);
  const double cp = coef_.speed_plus(z);
  if (x <= 0.0) return u0_(x - cm * t);
  if (x > cp * t) return u0_(x - cp * t);
  const double r = cm / cp;
  const double amplitude = coef_.transmission == Transmission::conserve_flux ? r : 1.0;
  return amplitude * u0_(r * (x - cp * t));
}

std::vector<double> AnalyticConvectionSolution::breakpoints(double x, double t) const {
  std::vector<double> out;
  const double s = coef_.sigma;
  if (s == 0.0 || t <= 0.0) return out;
  const double edges[2] = {u0_.lo, u0_.hi};
  if (x <= 0.0) {
    // x - (c^- + s z) t = e
    for (double e : edges) keep_if_inside((x - e - coef_.c_minus * t) / (s * t), out);
  } else {
    keep_if_inside((x / t - coef_.c_plus) / s, out);
    for (double e : edges) {
      keep_if_inside((x - e - coef_.c_plus * t) / (s * t), out);
      // (c^- + s z)(x - c^+ t - s t z) = e (c^+ + s z)
      const double bx = x - coef_.c_plus * t;
      const double tau = s * t;
      add_roots(-s * tau, s * bx - coef_.c_minus * tau - e * s, coef_.c_minus * bx - e * coef_.c_plus,
                out);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

gpc::Moments AnalyticConvectionSolution::moments(double x, double t) const {
  static const gpc::QuadratureRule piece_rule = gpc::gauss_rule(kPiecePoints);
  std::vector<double> cuts{-1.0};
  for (double z : breakpoints(x, t)) cuts.push_back(z);
  cuts.push_back(1.0);

  double mean = 0.0;
  double second = 0.0;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double lo = cuts[p];
    const double hi = cuts[p + 1];
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    if (half <= 0.0) continue;
    for (std::size_t q = 0; q < piece_rule.count(); ++q) {
      const double u = value(x, t, mid + half * piece_rule.nodes[q]);
      const double w = half * piece_rule.weights[q];
      mean += w * u;
      second += w * u * u;
    }
  }
  return {mean, std::max(0.0, second - mean * mean)};
}

}  // namespace stochhyp::convection
