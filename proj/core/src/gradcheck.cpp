// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "chronogan/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "chronogan/errors.hpp"

namespace chronogan::ad {

template <typename Real>
Tensor<Real> finite_diff_gradient(const std::function<Real(const Tensor<Real>&)>& f, const Tensor<Real>& params,
                                  Real epsilon) {
  if (!(epsilon > Real(0))) throw ContractError("finite_diff_gradient: epsilon must be positive");
  Tensor<Real> probe = params;
  Tensor<Real> out(params.shape());
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Real x = params[i];
    probe[i] = x + epsilon;
    const Real up = f(probe);
    probe[i] = x - epsilon;
    const Real down = f(probe);
    probe[i] = x;
    if (!std::isfinite(up) || !std::isfinite(down)) {
      throw DomainError("finite_diff_gradient: f is not finite near element " + std::to_string(i));
    }
    out[i] = (up - down) / (Real(2) * epsilon);
  }
  return out;
}

template <typename Real>
Real gradient_mismatch(const Tensor<Real>& analytic, const Tensor<Real>& numeric, Real rel, Real abs_floor) {
  if (analytic.shape() != numeric.shape()) throw ShapeError("gradient_mismatch: shapes differ");
  Real worst = 0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    const Real a = analytic[i];
    const Real n = numeric[i];
    const Real allowed = rel * std::max(std::abs(a), std::abs(n)) + abs_floor;
    worst = std::max(worst, std::abs(a - n) / allowed);
  }
  return worst;
}

template Tensor<float> finite_diff_gradient(const std::function<float(const Tensor<float>&)>&, const Tensor<float>&,
                                            float);
template Tensor<double> finite_diff_gradient(const std::function<double(const Tensor<double>&)>&,
                                             const Tensor<double>&, double);
template float gradient_mismatch(const Tensor<float>&, const Tensor<float>&, float, float);
template double gradient_mismatch(const Tensor<double>&, const Tensor<double>&, double, double);

}  // namespace chronogan::ad
