// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <functional>

#include "chronogan/tensor.hpp"

namespace chronogan::ad {

/// Central-difference estimate of the gradient of scalar `f` at `params`:
/// (f(p + eps e_i) - f(p - eps e_i)) / (2 eps) for every element i.
/// Throws DomainError if f returns a non-finite value, ContractError if eps <= 0.
template <typename Real>
Tensor<Real> finite_diff_gradient(const std::function<Real(const Tensor<Real>&)>& f, const Tensor<Real>& params,
                                  Real epsilon);

/// Largest element-wise disagreement between two gradients, as a multiple of
/// the allowed error `rel * max(|a|, |b|) + abs_floor`. Values <= 1 agree.
template <typename Real>
Real gradient_mismatch(const Tensor<Real>& analytic, const Tensor<Real>& numeric, Real rel, Real abs_floor);

extern template Tensor<float> finite_diff_gradient(const std::function<float(const Tensor<float>&)>&,
                                                   const Tensor<float>&, float);
extern template Tensor<double> finite_diff_gradient(const std::function<double(const Tensor<double>&)>&,
                                                    const Tensor<double>&, double);
extern template float gradient_mismatch(const Tensor<float>&, const Tensor<float>&, float, float);
extern template double gradient_mismatch(const Tensor<double>&, const Tensor<double>&, double, double);

}  // namespace chronogan::ad
