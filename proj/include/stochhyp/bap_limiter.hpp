#pragma once

#include <string_view>

namespace stochhyp {

/// Smooth odd increasing map B used by the BAP slope limiter.
enum class LimiterMap { arctan, tanh, sqrt_rational };

/// s = B^-1((B(s_l) + B(s_r)) / 2). Smooth in both slopes and always
/// between them. Throws DomainError on non-finite input.
double bap_slope(double s_l, double s_r, LimiterMap map);

std::string_view to_string(LimiterMap map);
/// Throws ConfigError on an unknown name.
LimiterMap limiter_from_string(std::string_view name);

}  // namespace stochhyp
