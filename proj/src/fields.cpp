#include "stochhyp/fields.hpp"

#include <cmath>

namespace stochhyp {

namespace {

MomentField moments_of(std::span<const double> raw, std::size_t modes) {
  const std::size_t cells = modes == 0 ? 0 : raw.size() / modes;
  MomentField out;
  out.expectation.resize(cells);
  out.variance.resize(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    const auto m = gpc::moments(raw.subspan(c * modes, modes));
    out.expectation[c] = m.expectation;
    out.variance[c] = m.variance;
  }
  return out;
}

}  // namespace

MomentField moment_field(const GpcField1D& field) { return moments_of(field.raw(), field.modes()); }

MomentField moment_field(const GpcField2D& field) { return moments_of(field.raw(), field.modes()); }

long first_non_finite_cell(std::span<const double> raw, std::size_t modes) {
  for (std::size_t n = 0; n < raw.size(); ++n) {
    if (!std::isfinite(raw[n])) return static_cast<long>(n / modes);
  }
  return -1;
}

}  // namespace stochhyp
