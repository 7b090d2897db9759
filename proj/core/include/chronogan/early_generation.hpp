// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "chronogan/model_bundle.hpp"
#include "chronogan/score_networks.hpp"
#include "chronogan/sequence_batch.hpp"

// In-training checkpoint selection. Every `check_epoch` epochs in the second
// half of the generative phase, a fresh synthetic set is scored by
//
//   score = dis + p1 * pre + p2 * (mse_mean + mse_std)
//
// where p1 = dis / pre and p2 = dis / (mse_mean + mse_std) are frozen at the
// first evaluation, so the three terms start out equally weighted. The lowest
// score seen so far wins.
namespace chronogan::train {

/// Floor for the p1 / p2 denominators.
inline constexpr double kRatioGuard = 1e-12;

struct EarlyGenMetrics {
  double dis = 0.0;
  double pre = 0.0;
  double mse_mean = 0.0;
  double mse_std = 0.0;
};

struct EarlyGenRecord {
  long epoch = 0;
  EarlyGenMetrics metrics;
  double score = 0.0;
  bool saved = false;
  bool guarded = false;  ///< a p1 / p2 denominator was floored at this evaluation
};

struct EarlyGenState {
  std::optional<double> total_error;
  std::optional<double> p1;
  std::optional<double> p2;
  std::optional<long> best_epoch;
  std::optional<data::SequenceBatch> best_synthetic;
  std::optional<nn::ModelBundle<float>> best_checkpoint;
  std::vector<EarlyGenRecord> history;
};

/// epoch >= floor(total / 2) and epoch % check_epoch == 0, epochs counted from 1.
bool is_check_epoch(long epoch, long total_epochs, long check_epoch);

/// All check epochs of a run, ascending.
std::vector<long> check_schedule(long total_epochs, long check_epoch);

/// Score arithmetic and bookkeeping only. Sets p1 / p2 on the first call,
/// appends to history, and updates total_error when score <= total_error.
/// Returns the appended record.
const EarlyGenRecord& record_evaluation(EarlyGenState& state, long epoch, const EarlyGenMetrics& metrics);

/// Budgeted discriminative and predictive scores plus moment gaps.
EarlyGenMetrics evaluate_synthetic(const data::SequenceBatch& real, const data::SequenceBatch& synthetic,
                                   const eval::ScoreNetConfig& budget, std::uint64_t seed);

/// evaluate_synthetic + record_evaluation; on a save, stores `synthetic` and a
/// snapshot of `bundle` as the best artifacts.
const EarlyGenRecord& early_generation_check(const data::SequenceBatch& real, const data::SequenceBatch& synthetic,
                                             const nn::ModelBundle<float>& bundle, EarlyGenState& state, long epoch,
                                             const eval::ScoreNetConfig& budget, std::uint64_t seed);

}  // namespace chronogan::train
