// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "chronogan/graph.hpp"

namespace chronogan::loss {

using ad::Var;

/// Per-series summaries matched between real and synthetic batches.
enum class Statistic { slope, skewness, weighted_average, median };

inline constexpr Statistic kAllStatistics[] = {Statistic::slope, Statistic::skewness, Statistic::weighted_average,
                                               Statistic::median};

std::string_view statistic_name(Statistic s);

/// Weighting of timesteps inside the weighted average.
enum class TimeWeights {
  linear,   ///< w_t = t for t = 1..T
  uniform,  ///< w_t = 1 (reduces to the plain mean)
};

std::vector<double> time_weights(TimeWeights policy, std::size_t length);

/// Least-squares slope coefficients: slope(x) = sum_t c_t x_t with
/// c_t = (T t - sum t) / (T sum t^2 - (sum t)^2), t = 1..T.
std::vector<double> slope_coefficients(std::size_t length);

/// Statistic of every (sample, feature) series of an (N x T x F) batch,
/// taken along time; the result is (N x F).
///
/// Skewness uses the population standard deviation, and is defined as 0 for
/// series whose variance is numerically zero. The median of an even-length
/// series is the midpoint of the two middle values. `weights` applies to
/// weighted_average only and defaults to the linear ramp.
/// Throws ContractError when T < 2.
template <typename Real>
Var<Real> series_statistic(Statistic kind, Var<Real> batch, std::span<const double> weights = {});

extern template Var<float> series_statistic(Statistic, Var<float>, std::span<const double>);
extern template Var<double> series_statistic(Statistic, Var<double>, std::span<const double>);

}  // namespace chronogan::loss
