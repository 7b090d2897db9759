// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "chronogan/tensor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <type_traits>

#include "chronogan/errors.hpp"

namespace chronogan::ad {

std::size_t element_count(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

std::string to_string(const Shape& shape) {
  std::string s = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape[i]);
  }
  return s + ")";
}

namespace {
void check_dims(const Shape& shape) {
  for (std::size_t d : shape) {
    if (d == 0) throw ShapeError("tensor dimensions must be positive, got " + to_string(shape));
  }
}
}  // namespace

template <typename Real>
Tensor<Real>::Tensor(Shape shape) : shape_(std::move(shape)) {
  check_dims(shape_);
  data_.resize(element_count(shape_));
}

template <typename Real>
Tensor<Real>::Tensor(Shape shape, std::vector<Real> data) : shape_(std::move(shape)), data_(std::move(data)) {
  check_dims(shape_);
  if (element_count(shape_) != data_.size()) {
    throw ShapeError("shape " + to_string(shape_) + " needs " + std::to_string(element_count(shape_)) +
                     " values, got " + std::to_string(data_.size()));
  }
}

template <typename Real>
Tensor<Real> Tensor<Real>::full(Shape shape, Real value) {
  Tensor t(std::move(shape));
  t.fill(value);
  return t;
}

template <typename Real>
Tensor<Real> Tensor<Real>::from(std::initializer_list<Real> values) {
  return Tensor(Shape{values.size()}, std::vector<Real>(values));
}

template <typename Real>
Real Tensor<Real>::item() const {
  if (data_.size() != 1) throw ContractError("item() on tensor of shape " + to_string(shape_));
  return data_[0];
}

template <typename Real>
void Tensor<Real>::fill(Real value) {
  std::fill(data_.begin(), data_.end(), value);
}

template <typename Real>
Tensor<Real> Tensor<Real>::reshaped(Shape shape) const {
  if (element_count(shape) != data_.size()) {
    throw ShapeError("cannot reshape " + to_string(shape_) + " to " + to_string(shape));
  }
  return Tensor(std::move(shape), data_);
}

template <typename Real>
bool Tensor<Real>::all_finite() const noexcept {
  // Exponent all ones means inf or NaN. Integer OR-reduction vectorizes.
  using Bits = std::conditional_t<sizeof(Real) == 4, std::uint32_t, std::uint64_t>;
  constexpr Bits exponent = sizeof(Real) == 4 ? Bits(0x7f800000U) : Bits(0x7ff0000000000000ULL);
  Bits bad = 0;
  for (Real v : data_) bad |= static_cast<Bits>((std::bit_cast<Bits>(v) & exponent) == exponent);
  return bad == 0;
}

template class Tensor<float>;
template class Tensor<double>;

}  // namespace chronogan::ad
