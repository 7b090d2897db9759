// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace chronogan::ad {

/// Dimension sizes, outermost first. An empty shape denotes a scalar.
using Shape = std::vector<std::size_t>;

std::size_t element_count(const Shape& shape);
std::string to_string(const Shape& shape);

/// Dense row-major array. Value semantic; copying copies the data.
///
/// Invariant: element_count(shape()) == size(). Every dimension is positive.
template <typename Real>
class Tensor {
 public:
  using value_type = Real;

  Tensor() : shape_{}, data_(1, Real(0)) {}
  explicit Tensor(Shape shape);
  Tensor(Shape shape, std::vector<Real> data);

  static Tensor zeros(Shape shape) { return Tensor(std::move(shape)); }
  static Tensor full(Shape shape, Real value);
  static Tensor scalar(Real value) { return Tensor(Shape{}, std::vector<Real>{value}); }
  static Tensor from(std::initializer_list<Real> values);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::size_t dim(std::size_t axis) const { return shape_.at(axis); }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<Real> values() noexcept { return data_; }
  std::span<const Real> values() const noexcept { return data_; }
  Real* data() noexcept { return data_.data(); }
  const Real* data() const noexcept { return data_.data(); }

  Real& operator[](std::size_t i) noexcept { return data_[i]; }
  Real operator[](std::size_t i) const noexcept { return data_[i]; }

  /// Value of a single-element tensor.
  Real item() const;

  void fill(Real value);
  /// Same data, new shape with the same element count.
  Tensor reshaped(Shape shape) const;

  bool all_finite() const noexcept;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  Shape shape_;
  std::vector<Real> data_;
};

extern template class Tensor<float>;
extern template class Tensor<double>;

/// Element-wise conversion between precisions.
template <typename To, typename From>
Tensor<To> cast(const Tensor<From>& t) {
  std::vector<To> out(t.values().begin(), t.values().end());
  return Tensor<To>(t.shape(), std::move(out));
}

}  // namespace chronogan::ad
