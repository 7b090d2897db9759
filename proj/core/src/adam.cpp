// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "chronogan/adam.hpp"

#include <cmath>

#include "chronogan/errors.hpp"

namespace chronogan::ad {

template <typename Real>
void adam_step(std::span<Parameter<Real>* const> params, AdamState<Real>& state, const AdamOptions& options) {
  if (state.slots.empty() && state.step == 0) {
    for (const Parameter<Real>* p : params) {
      state.slots.push_back({p->name, Tensor<Real>::zeros(p->value.shape()), Tensor<Real>::zeros(p->value.shape())});
    }
  }
  if (state.slots.size() != params.size()) {
    throw ContractError("adam_step: state has " + std::to_string(state.slots.size()) + " slots for " +
                        std::to_string(params.size()) + " parameters");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Parameter<Real>& p = *params[i];
    const auto& slot = state.slots[i];
    if (slot.name != p.name || slot.m.shape() != p.value.shape() || p.grad.shape() != p.value.shape()) {
      throw ContractError("adam_step: parameter '" + p.name + "' is not aligned with its moment slot '" + slot.name +
                          "'");
    }
  }

  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(options.beta1, t);
  const double correction2 = 1.0 - std::pow(options.beta2, t);
  const Real b1 = static_cast<Real>(options.beta1);
  const Real b2 = static_cast<Real>(options.beta2);
  const Real step_size = static_cast<Real>(options.learning_rate / correction1);
  const Real inv_sqrt_c2 = static_cast<Real>(1.0 / std::sqrt(correction2));
  const Real eps = static_cast<Real>(options.epsilon);

  for (std::size_t i = 0; i < params.size(); ++i) {
    Parameter<Real>& p = *params[i];
    auto& slot = state.slots[i];
    Real* w = p.value.data();
    const Real* g = p.grad.data();
    Real* m = slot.m.data();
    Real* v = slot.v.data();
    for (std::size_t k = 0; k < p.value.size(); ++k) {
      m[k] = b1 * m[k] + (Real(1) - b1) * g[k];
      v[k] = b2 * v[k] + (Real(1) - b2) * g[k] * g[k];
      w[k] -= step_size * m[k] / (std::sqrt(v[k]) * inv_sqrt_c2 + eps);
    }
  }
}

template void adam_step(std::span<Parameter<float>* const>, AdamState<float>&, const AdamOptions&);
template void adam_step(std::span<Parameter<double>* const>, AdamState<double>&, const AdamOptions&);

}  // namespace chronogan::ad
