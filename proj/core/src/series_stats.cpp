// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "chronogan/series_stats.hpp"

#include "chronogan/errors.hpp"
#include "chronogan/ops.hpp"

namespace chronogan::loss {

using ad::Shape;
using ad::Tensor;

std::string_view statistic_name(Statistic s) {
  switch (s) {
    case Statistic::slope: return "slope";
    case Statistic::skewness: return "skewness";
    case Statistic::weighted_average: return "weighted_average";
    case Statistic::median: return "median";
  }
  return "unknown";
}

std::vector<double> time_weights(TimeWeights policy, std::size_t length) {
  std::vector<double> w(length, 1.0);
  if (policy == TimeWeights::linear) {
    for (std::size_t t = 0; t < length; ++t) w[t] = static_cast<double>(t + 1);
  }
  return w;
}

std::vector<double> slope_coefficients(std::size_t length) {
  const double n = static_cast<double>(length);
  double s1 = 0, s2 = 0;
  for (std::size_t t = 1; t <= length; ++t) {
    s1 += static_cast<double>(t);
    s2 += static_cast<double>(t * t);
  }
  const double denom = n * s2 - s1 * s1;
  std::vector<double> c(length);
  for (std::size_t t = 1; t <= length; ++t) c[t - 1] = (n * static_cast<double>(t) - s1) / denom;
  return c;
}

namespace {

// Constant (T x F) tensor holding coeffs[t] in every feature column.
template <typename Real>
Var<Real> time_profile(ad::Graph<Real>& g, std::span<const double> coeffs, std::size_t features) {
  Tensor<Real> t(Shape{coeffs.size(), features});
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    for (std::size_t f = 0; f < features; ++f) t[i * features + f] = static_cast<Real>(coeffs[i]);
  }
  return g.constant(std::move(t));
}

template <typename Real>
Var<Real> linear_in_time(Var<Real> batch, std::span<const double> coeffs) {
  const std::size_t features = batch.shape()[2];
  return ad::sum(ad::mul(batch, time_profile(*batch.graph(), coeffs, features)), 1);
}

template <typename Real>
Var<Real> skewness(Var<Real> batch) {
  ad::Graph<Real>& g = *batch.graph();
  const std::size_t steps = batch.shape()[1];
  Var<Real> centered = ad::sub(batch, ad::broadcast(ad::mean(batch, 1), 1, steps));
  Var<Real> var = ad::mean(ad::square(centered), 1);
  Var<Real> third = ad::mean(ad::mul(centered, ad::square(centered)), 1);

  // Series with variance at rounding level relative to their magnitude are
  // treated as constant: skew 0, no gradient through the ratio.
  Var<Real> power = ad::mean(ad::square(batch), 1);
  Tensor<Real> keep(var.shape());
  Tensor<Real> fill(var.shape());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const bool flat = var.value()[i] <= Real(1e-10) * power.value()[i] || var.value()[i] <= Real(1e-30);
    keep[i] = flat ? Real(0) : Real(1);
    fill[i] = flat ? Real(1) : Real(0);
  }
  Var<Real> keep_v = g.constant(std::move(keep));
  Var<Real> denom = ad::add(ad::mul(ad::mul(var, ad::sqrt(var)), keep_v), g.constant(std::move(fill)));
  return ad::mul(ad::div(third, denom), keep_v);
}

}  // namespace

template <typename Real>
Var<Real> series_statistic(Statistic kind, Var<Real> batch, std::span<const double> weights) {
  if (batch.shape().size() != 3) {
    throw ShapeError("series_statistic expects (N x T x F), got " + ad::to_string(batch.shape()));
  }
  const std::size_t steps = batch.shape()[1];
  if (steps < 2) throw ContractError("series statistics need at least two timesteps");
  switch (kind) {
    case Statistic::slope: {
      // Integer numerators first and a single division last: the weighted sum
      // is exact for exactly representable lines, so slope(a t + b) == a.
      const double n = static_cast<double>(steps);
      double s1 = 0, s2 = 0;
      std::vector<double> k(steps);
      for (std::size_t t = 1; t <= steps; ++t) {
        s1 += static_cast<double>(t);
        s2 += static_cast<double>(t * t);
      }
      for (std::size_t t = 1; t <= steps; ++t) k[t - 1] = n * static_cast<double>(t) - s1;
      Var<Real> num = linear_in_time(batch, std::span<const double>(k));
      return ad::div(num, batch.graph()->constant(Tensor<Real>::full(num.shape(), static_cast<Real>(n * s2 - s1 * s1))));
    }
    case Statistic::skewness:
      return skewness(batch);
    case Statistic::weighted_average: {
      std::vector<double> w = weights.empty() ? time_weights(TimeWeights::linear, steps)
                                              : std::vector<double>(weights.begin(), weights.end());
      if (w.size() != steps) throw ShapeError("weighted average needs one weight per timestep");
      double total = 0;
      for (double v : w) {
        if (v < 0) throw DomainError("weighted average weights must be nonnegative");
        total += v;
      }
      if (!(total > 0)) throw DomainError("weighted average weights sum to zero");
      for (double& v : w) v /= total;
      return linear_in_time(batch, std::span<const double>(w));
    }
    case Statistic::median:
      return ad::median(batch, 1);
  }
  throw ContractError("unknown statistic");
}

template Var<float> series_statistic(Statistic, Var<float>, std::span<const double>);
template Var<double> series_statistic(Statistic, Var<double>, std::span<const double>);

}  // namespace chronogan::loss
