// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors
//
// Reference implementations written with plain loops over doubles, kept apart
// from the library so that the tests compare two independent derivations.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "chronogan/graph.hpp"
#include "chronogan/rng.hpp"
#include "chronogan/tensor.hpp"

namespace chronogan::testing {

// Row-major (N x T x F) block of doubles.
struct Cube {
  std::size_t n = 0, t = 0, f = 0;
  std::vector<double> v;

  Cube() = default;
  Cube(std::size_t n_, std::size_t t_, std::size_t f_) : n(n_), t(t_), f(f_), v(n_ * t_ * f_, 0.0) {}
  double& at(std::size_t i, std::size_t s, std::size_t k) { return v[(i * t + s) * f + k]; }
  double at(std::size_t i, std::size_t s, std::size_t k) const { return v[(i * t + s) * f + k]; }

  static Cube from(const ad::Tensor<double>& x);
  ad::Tensor<double> tensor() const;
};

Cube random_cube(Rng& rng, std::size_t n, std::size_t t, std::size_t f, double lo = 0.0, double hi = 1.0);
ad::Tensor<double> random_tensor(Rng& rng, ad::Shape shape, double lo = -1.0, double hi = 1.0);

// Per-sample, per-feature quantities, (N x F) row-major.
std::vector<double> slope_oracle(const Cube& x);
std::vector<double> skew_oracle(const Cube& x);
std::vector<double> weighted_average_oracle(const Cube& x, const std::vector<double>& w);
std::vector<double> median_oracle(const Cube& x);

double recon_oracle(const Cube& x, const Cube& y);
double supervised_oracle(const Cube& h, const Cube& s);
double discriminator_oracle(const std::vector<double>& y_real, const std::vector<double>& y_fake, std::size_t n,
                            std::size_t t);
double generator_adv_oracle(const std::vector<double>& y_fake, std::size_t n, std::size_t t);
double moment_oracle(const Cube& x, const Cube& y);
// Squared gap of batch means plus squared gap of batch population stds of one statistic.
double statistic_gap_oracle(const std::vector<double>& real_stat, const std::vector<double>& synth_stat,
                            std::size_t n_real, std::size_t n_synth, std::size_t f);

// One recurrent step for a single row; weights are (in x H) and (H x H) per gate.
struct GateWeights {
  std::vector<double> w, u, b;
};
std::vector<double> gru_step_oracle(const std::vector<double>& x, const std::vector<double>& h,
                                    const std::vector<GateWeights>& gates, std::size_t in, std::size_t hid);
std::pair<std::vector<double>, std::vector<double>> lstm_step_oracle(const std::vector<double>& x,
                                                                     const std::vector<double>& h,
                                                                     const std::vector<double>& c,
                                                                     const std::vector<GateWeights>& gates,
                                                                     std::size_t in, std::size_t hid);

// Worst ratio |analytic - numeric| / (rel * max(|a|, |n|) + floor) over every
// input; at most 1 means every gradient element is within tolerance.
using LossBuilder = std::function<ad::Var<double>(ad::Graph<double>&, std::vector<ad::Var<double>>&)>;
double gradient_check(std::vector<ad::Parameter<double>>& inputs, const LossBuilder& loss, double epsilon = 1e-4,
                      double rel = 1e-3, double floor = 1e-6);
// Same, for losses over parameters the caller owns (e.g. network weights).
double gradient_check(const std::vector<ad::Parameter<double>*>& params,
                      const std::function<ad::Var<double>(ad::Graph<double>&)>& loss, double epsilon = 1e-4,
                      double rel = 1e-3, double floor = 1e-6);

}  // namespace chronogan::testing
