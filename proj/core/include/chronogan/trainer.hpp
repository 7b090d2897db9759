// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "chronogan/adam.hpp"
#include "chronogan/early_generation.hpp"
#include "chronogan/losses.hpp"
#include "chronogan/model_bundle.hpp"
#include "chronogan/rng.hpp"
#include "chronogan/sequence_batch.hpp"

namespace chronogan::train {

struct TrainConfig {
  long epochs_phase1 = 500;
  long epochs_phase2 = 500;
  long epochs_phase3 = 4000;  ///< also the N of the early-generation schedule
  std::size_t batch_size = 128;
  double learning_rate = 1e-3;
  long check_epoch = 500;
  std::size_t eval_budget_steps = 500;
  std::uint64_t seed = 0;
  loss::LossWeights weights;
  loss::TimeWeights ts_weights = loss::TimeWeights::linear;

  /// ContractError on negative epochs, zero batch size, non-positive rate,
  /// check_epoch < 1, or invalid loss weights.
  void validate() const;
};

inline constexpr double kNotRecorded = std::numeric_limits<double>::quiet_NaN();

/// Losses of one epoch; components a phase does not compute stay NaN.
struct EpochLosses {
  int phase = 0;
  long epoch = 0;
  double discriminator = kNotRecorded;
  double reconstruction = kNotRecorded;
  double adversarial_ae = kNotRecorded;
  double autoencoder = kNotRecorded;
  double supervised = kNotRecorded;
  double adversarial_g = kNotRecorded;
  double moment = kNotRecorded;
  double ts = kNotRecorded;
  double generator = kNotRecorded;
};

/// Optional instrumentation. Every callback runs on the training thread.
struct TrainHooks {
  std::function<void(const EpochLosses&)> on_epoch;
  /// Names of the parts concatenated on each side of a discriminator update.
  std::function<void(int phase, const std::vector<std::string>& real, const std::vector<std::string>& fake)>
      on_discriminator_batch;
  std::function<void(const EarlyGenRecord&)> on_early_generation;
};

/// Three-phase protocol over a normalized dataset. One epoch is one minibatch
/// step of `batch_size` samples drawn without replacement.
///
/// Phase 1: discriminator on X vs X^AE, then encoder+decoder.
/// Phase 2: supervisor only, on real embeddings.
/// Phase 3: discriminator on {X, X^AE} vs {X^G, X~}, then generator+supervisor,
///          then encoder+decoder; early generation per its schedule.
///
/// A non-finite value restores the bundle to the start of the failing epoch and
/// throws TrainingDiverged.
class Trainer {
 public:
  Trainer(TrainConfig config, data::SequenceBatch data, nn::ModelBundle<float>& bundle, TrainHooks hooks = {});

  std::vector<EpochLosses> train_phase1();
  std::vector<EpochLosses> train_phase2();
  std::vector<EpochLosses> train_phase3(EarlyGenState& state);
  /// Phases 1-3 in order.
  std::vector<EpochLosses> run(EarlyGenState& state);

  const TrainConfig& config() const noexcept { return config_; }
  const data::SequenceBatch& data() const noexcept { return data_; }

 private:
  template <typename Step>
  std::vector<EpochLosses> run_phase(int phase, long epochs, Step step);

  std::vector<std::size_t> next_batch();
  ad::Tensor<float> noise(std::size_t n);

  TrainConfig config_;
  data::SequenceBatch data_;
  nn::ModelBundle<float>& bundle_;
  TrainHooks hooks_;
  std::vector<double> ts_weights_;

  Rng batch_rng_;
  Rng noise_rng_;
  Rng eval_rng_;

  ad::Adam<float> discriminator_opt_;
  ad::Adam<float> autoencoder_opt_;
  ad::Adam<float> supervisor_opt_;
  ad::Adam<float> generator_opt_;
};

/// X~ = r(s(g(Z))) with Z ~ U[0, 1]^(n x T x noise_dim) drawn from `seed`.
/// n = 0 gives an empty batch.
data::SequenceBatch generate(nn::ModelBundle<float>& bundle, std::size_t n, std::size_t steps, std::uint64_t seed);

/// CSV of epoch losses; unrecorded components are left empty.
void write_train_log(const std::vector<EpochLosses>& log, std::ostream& out);
/// CSV of early-generation evaluations.
void write_early_gen_history(const EarlyGenState& state, std::ostream& out);

}  // namespace chronogan::train
