#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stochhyp/gpc_core.hpp"

namespace stochhyp {

/// Time integrator wrapped around a forward-Euler update: `rk2` is Heun's method.
enum class Integrator { euler, rk2 };

/// gPC coefficients on a 1D grid, entry (i, k) = mode k of cell i.
class GpcField1D {
 public:
  GpcField1D() = default;
  GpcField1D(std::size_t cells, std::size_t modes)
      : cells_(cells), modes_(modes), data_(cells * modes, 0.0) {}

  std::size_t cells() const noexcept { return cells_; }
  std::size_t modes() const noexcept { return modes_; }

  double& operator()(std::size_t i, std::size_t k) { return data_[i * modes_ + k]; }
  double operator()(std::size_t i, std::size_t k) const { return data_[i * modes_ + k]; }

  std::span<double> cell(std::size_t i) { return {data_.data() + i * modes_, modes_}; }
  std::span<const double> cell(std::size_t i) const { return {data_.data() + i * modes_, modes_}; }

  std::span<double> raw() { return data_; }
  std::span<const double> raw() const { return data_; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::size_t size() const noexcept { return data_.size(); }

  bool operator==(const GpcField1D&) const = default;

 private:
  std::size_t cells_ = 0;
  std::size_t modes_ = 0;
  std::vector<double> data_;
};

/// gPC coefficients on a phase-space grid, entry (i, j, k) = mode k of cell (x_i, v_j).
class GpcField2D {
 public:
  GpcField2D() = default;
  GpcField2D(std::size_t nx, std::size_t nv, std::size_t modes)
      : nx_(nx), nv_(nv), modes_(modes), data_(nx * nv * modes, 0.0) {}

  std::size_t nx() const noexcept { return nx_; }
  std::size_t nv() const noexcept { return nv_; }
  std::size_t modes() const noexcept { return modes_; }
  std::size_t cells() const noexcept { return nx_ * nv_; }

  double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * nv_ + j) * modes_ + k];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * nv_ + j) * modes_ + k];
  }

  std::span<double> cell(std::size_t i, std::size_t j) {
    return {data_.data() + (i * nv_ + j) * modes_, modes_};
  }
  std::span<const double> cell(std::size_t i, std::size_t j) const {
    return {data_.data() + (i * nv_ + j) * modes_, modes_};
  }

  std::span<double> raw() { return data_; }
  std::span<const double> raw() const { return data_; }

  bool operator==(const GpcField2D&) const = default;

 private:
  std::size_t nx_ = 0;
  std::size_t nv_ = 0;
  std::size_t modes_ = 0;
  std::vector<double> data_;
};

/// Per-cell expectation and variance, in the cell order of the source field.
struct MomentField {
  std::vector<double> expectation;
  std::vector<double> variance;

  std::size_t size() const noexcept { return expectation.size(); }
};

MomentField moment_field(const GpcField1D& field);
MomentField moment_field(const GpcField2D& field);

/// First non-finite entry as a flat cell index, or -1.
long first_non_finite_cell(std::span<const double> raw, std::size_t modes);

}  // namespace stochhyp
