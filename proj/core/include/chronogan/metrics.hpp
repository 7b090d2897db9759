// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "chronogan/sequence_batch.hpp"

namespace chronogan::eval {

/// Per-replication values of one metric with their mean and population std.
struct ScoreReport {
  std::string metric;
  std::vector<double> values;
  double mean = 0.0;
  double stddev = 0.0;

  std::size_t replications() const noexcept { return values.size(); }
  /// Builds a report, computing mean and std from `values`.
  static ScoreReport from_values(std::string metric, std::vector<double> values);
  /// "0.204 ± 0.03": mean to three decimals, std to two.
  std::string formatted() const;
};

/// Thrown by replicate() when one replication fails. The original exception is
/// attached as a nested exception.
class ReplicationError : public std::runtime_error {
 public:
  ReplicationError(std::size_t index, const std::string& what)
      : std::runtime_error("replication " + std::to_string(index) + " failed: " + what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Runs `metric(seed)` once per seed on worker threads (at most `max_threads`,
/// 0 = hardware concurrency) and aggregates. Seeds must be distinct.
ScoreReport replicate(const std::string& metric_name, const std::function<double(std::uint64_t)>& metric,
                      std::span<const std::uint64_t> seeds, std::size_t max_threads = 0);

/// `count` distinct seeds derived from `root`.
std::vector<std::uint64_t> replication_seeds(std::uint64_t root, std::size_t count);

/// Gaps between per-(t, f) batch means and population variances.
struct MomentGaps {
  double mse_mean = 0.0;       ///< mean over (t, f) of squared mean gaps
  double mse_var = 0.0;        ///< mean over (t, f) of squared variance gaps
  double mse_std = 0.0;        ///< sqrt(mse_var)
  double mean_abs_gap = 0.0;   ///< mean over (t, f) of |mean gap|
};

/// ContractError if T or F differ or either side is empty.
MomentGaps moment_gaps(const data::SequenceBatch& real, const data::SequenceBatch& synth);

}  // namespace chronogan::eval
