#include "stochhyp/bap_limiter.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stochhyp/errors.hpp"

namespace stochhyp {

namespace {

// The tanh and x/sqrt(1+x^2) maps saturate to 1 in double precision for
// moderate slopes, so for equal-sign slopes the average is formed through
// the complement 1 - B(x), which stays accurate.

// 1 - tanh(x) for x >= 0
double tanh_complement(double x) {
  const double e = std::exp(-2.0 * x);
  return 2.0 * e / (1.0 + e);
}

// 1 - x / sqrt(1 + x^2) for x >= 0
double rational_complement(double x) {
  const double r = std::hypot(1.0, x);
  return 1.0 / (r * (r + x));
}

double same_sign_positive(double a, double b, LimiterMap map) {
  switch (map) {
    case LimiterMap::arctan:
      return std::tan(0.5 * (std::atan(a) + std::atan(b)));
    case LimiterMap::tanh: {
      const double d = 0.5 * (tanh_complement(a) + tanh_complement(b));
      // atanh(1 - d)
      return 0.5 * std::log((2.0 - d) / d);
    }
    case LimiterMap::sqrt_rational: {
      const double d = 0.5 * (rational_complement(a) + rational_complement(b));
      return (1.0 - d) / std::sqrt(d * (2.0 - d));
    }
  }
  return 0.0;
}

double mixed_sign(double a, double b, LimiterMap map) {
  switch (map) {
    case LimiterMap::arctan:
      return std::tan(0.5 * (std::atan(a) + std::atan(b)));
    case LimiterMap::tanh:
      return std::atanh(0.5 * (std::tanh(a) + std::tanh(b)));
    case LimiterMap::sqrt_rational: {
      const double y = 0.5 * (a / std::hypot(1.0, a) + b / std::hypot(1.0, b));
      return y / std::sqrt(1.0 - y * y);
    }
  }
  return 0.0;
}

}  // namespace

double bap_slope(double s_l, double s_r, LimiterMap map) {
  if (!std::isfinite(s_l) || !std::isfinite(s_r)) {
    throw DomainError("bap_slope: non-finite slope");
  }
  if (s_l == s_r) return s_l;
  // Odd symmetry by construction: always evaluate on the side with
  // non-negative slope sum and flip back.
  if (s_l + s_r < 0.0) return -bap_slope(-s_l, -s_r, map);

  double s = 0.0;
  if (s_l >= 0.0 && s_r >= 0.0) {
    s = same_sign_positive(s_l, s_r, map);
  } else {
    s = mixed_sign(s_l, s_r, map);
  }
  return std::clamp(s, std::min(s_l, s_r), std::max(s_l, s_r));
}

std::string_view to_string(LimiterMap map) {
  switch (map) {
    case LimiterMap::arctan: return "arctan";
    case LimiterMap::tanh: return "tanh";
    case LimiterMap::sqrt_rational: return "sqrt_rational";
  }
  return "arctan";
}

LimiterMap limiter_from_string(std::string_view name) {
  if (name == "arctan") return LimiterMap::arctan;
  if (name == "tanh") return LimiterMap::tanh;
  if (name == "sqrt_rational") return LimiterMap::sqrt_rational;
  throw ConfigError("unknown limiter map '" + std::string(name) + "'");
}

}  // namespace stochhyp
