// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <span>
#include <string>
#include <vector>

#include "chronogan/graph.hpp"

namespace chronogan::ad {

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// First and second moment estimates, one slot per parameter, plus the step count.
template <typename Real>
struct AdamState {
  struct Slot {
    std::string name;
    Tensor<Real> m;
    Tensor<Real> v;
  };
  std::vector<Slot> slots;
  long step = 0;
};

/// One bias-corrected Adam update of every parameter from its accumulated grad.
/// An empty state is initialised from `params`; afterwards the state must stay
/// aligned with `params` by position, name and shape (else ContractError).
template <typename Real>
void adam_step(std::span<Parameter<Real>* const> params, AdamState<Real>& state, const AdamOptions& options);

/// Owns a parameter group and its moment state.
template <typename Real>
class Adam {
 public:
  Adam() = default;
  Adam(std::vector<Parameter<Real>*> params, AdamOptions options)
      : params_(std::move(params)), options_(options) {}

  void zero_grad() {
    for (Parameter<Real>* p : params_) p->zero_grad();
  }
  void step() { adam_step<Real>(params_, state_, options_); }

  std::span<Parameter<Real>* const> params() const { return params_; }
  const AdamState<Real>& state() const { return state_; }

 private:
  std::vector<Parameter<Real>*> params_;
  AdamOptions options_;
  AdamState<Real> state_;
};

extern template void adam_step(std::span<Parameter<float>* const>, AdamState<float>&, const AdamOptions&);
extern template void adam_step(std::span<Parameter<double>* const>, AdamState<double>&, const AdamOptions&);

}  // namespace chronogan::ad
