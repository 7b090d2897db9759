// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <span>

#include "chronogan/graph.hpp"

// Differentiable operations over Var. Every operation appends one node to the
// graph its operands live in.
//
// Broadcasting for the binary element-wise operations is limited to two
// cases: one operand is a single-element tensor, or one operand's shape is a
// trailing suffix of the other's (e.g. a bias of shape (H) against (N x H)).
// Anything else is a ShapeError.
namespace chronogan::ad {

template <typename Real> Var<Real> matmul(Var<Real> a, Var<Real> b);

template <typename Real> Var<Real> add(Var<Real> a, Var<Real> b);
template <typename Real> Var<Real> sub(Var<Real> a, Var<Real> b);
template <typename Real> Var<Real> mul(Var<Real> a, Var<Real> b);
template <typename Real> Var<Real> div(Var<Real> a, Var<Real> b);

/// a * c for a constant c.
template <typename Real> Var<Real> scale(Var<Real> a, Real c);
/// a + c for a constant c.
template <typename Real> Var<Real> add_scalar(Var<Real> a, Real c);

template <typename Real> Var<Real> concat(std::span<const Var<Real>> parts, std::size_t axis);
/// Elements [begin, end) along `axis`.
template <typename Real> Var<Real> slice(Var<Real> a, std::size_t axis, std::size_t begin, std::size_t end);
/// Inserts a new axis at position `axis` for every part and concatenates along it.
template <typename Real> Var<Real> stack(std::span<const Var<Real>> parts, std::size_t axis);
template <typename Real> Var<Real> reshape(Var<Real> a, Shape shape);
/// Inserts a new axis of length `n` at position `axis`, repeating the values.
template <typename Real> Var<Real> broadcast(Var<Real> a, std::size_t axis, std::size_t n);

template <typename Real> Var<Real> sigmoid(Var<Real> a);
template <typename Real> Var<Real> tanh(Var<Real> a);
/// Natural log. Negative input is a DomainError; zero yields -inf and so also fails.
template <typename Real> Var<Real> log(Var<Real> a);
/// Square root; gradient at exactly zero is taken as zero (subgradient).
template <typename Real> Var<Real> sqrt(Var<Real> a);
template <typename Real> Var<Real> square(Var<Real> a);
/// |a|; gradient at zero is zero.
template <typename Real> Var<Real> abs(Var<Real> a);
/// Clamps into [lo, hi]; gradient is passed only where no clamping happened.
template <typename Real> Var<Real> clamp(Var<Real> a, Real lo, Real hi);

template <typename Real> Var<Real> sum(Var<Real> a, std::size_t axis);
template <typename Real> Var<Real> mean(Var<Real> a, std::size_t axis);
/// Population variance (divide by N) along `axis`.
template <typename Real> Var<Real> variance(Var<Real> a, std::size_t axis);
/// Median along `axis`; even lengths average the two middle elements.
/// The gradient goes to the selected element(s).
template <typename Real> Var<Real> median(Var<Real> a, std::size_t axis);

template <typename Real> Var<Real> sum_all(Var<Real> a);
template <typename Real> Var<Real> mean_all(Var<Real> a);

template <typename Real> Var<Real> operator+(Var<Real> a, Var<Real> b) { return add(a, b); }
template <typename Real> Var<Real> operator-(Var<Real> a, Var<Real> b) { return sub(a, b); }
template <typename Real> Var<Real> operator*(Var<Real> a, Var<Real> b) { return mul(a, b); }
template <typename Real> Var<Real> operator/(Var<Real> a, Var<Real> b) { return div(a, b); }

}  // namespace chronogan::ad
