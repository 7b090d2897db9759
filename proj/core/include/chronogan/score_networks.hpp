// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "chronogan/sequence_batch.hpp"

// Post-hoc metrics backed by small single-layer LSTMs trained from scratch.
namespace chronogan::eval {

struct ScoreNetConfig {
  std::size_t steps = 2000;       ///< optimizer steps
  std::size_t batch_size = 128;   ///< per side for the classifier
  double learning_rate = 1e-3;
  double train_fraction = 0.8;
  std::optional<std::size_t> hidden;  ///< defaults to max(4, F / 2)

  std::size_t hidden_for(std::size_t features) const;
};

/// Trains an LSTM to tell real from synthetic sequences and returns
/// |accuracy - 0.5| on the held-out 20% of each side. 0 means the two sets are
/// indistinguishable to the classifier, 0.5 means perfectly separable.
///
/// ContractError if T or F differ or either side has fewer than 10 samples.
double discriminative_score(const data::SequenceBatch& real, const data::SequenceBatch& synth,
                            const ScoreNetConfig& cfg, std::uint64_t seed);

/// Train-on-synthetic, test-on-real: an LSTM maps x_{1:t} to x_{t+1} on the
/// synthetic set, and the returned value is its mean absolute error over every
/// next-step target in the real set. ContractError if T < 2 or shapes differ.
double predictive_score(const data::SequenceBatch& real, const data::SequenceBatch& synth, const ScoreNetConfig& cfg,
                        std::uint64_t seed);

}  // namespace chronogan::eval
