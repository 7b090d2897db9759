// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "chronogan/early_generation.hpp"

#include <algorithm>
#include <cmath>

#include "chronogan/errors.hpp"
#include "chronogan/metrics.hpp"
#include "chronogan/rng.hpp"

namespace chronogan::train {

bool is_check_epoch(long epoch, long total_epochs, long check_epoch) {
  if (check_epoch < 1) throw ContractError("check_epoch must be at least 1");
  return epoch >= 1 && epoch <= total_epochs && epoch >= total_epochs / 2 && epoch % check_epoch == 0;
}

std::vector<long> check_schedule(long total_epochs, long check_epoch) {
  std::vector<long> out;
  for (long e = 1; e <= total_epochs; ++e) {
    if (is_check_epoch(e, total_epochs, check_epoch)) out.push_back(e);
  }
  return out;
}

const EarlyGenRecord& record_evaluation(EarlyGenState& state, long epoch, const EarlyGenMetrics& m) {
  for (double v : {m.dis, m.pre, m.mse_mean, m.mse_std}) {
    if (!std::isfinite(v) || v < 0.0) throw DomainError("early-generation metrics must be finite and nonnegative");
  }
  EarlyGenRecord rec;
  rec.epoch = epoch;
  rec.metrics = m;
  const double moment = m.mse_mean + m.mse_std;
  if (!state.p1) {
    rec.guarded = m.pre < kRatioGuard || moment < kRatioGuard;
    state.p1 = m.dis / std::max(m.pre, kRatioGuard);
    state.p2 = m.dis / std::max(moment, kRatioGuard);
  }
  rec.score = m.dis + *state.p1 * m.pre + *state.p2 * moment;
  if (!state.total_error || rec.score <= *state.total_error) {
    state.total_error = rec.score;
    state.best_epoch = epoch;
    rec.saved = true;
  }
  state.history.push_back(rec);
  return state.history.back();
}

EarlyGenMetrics evaluate_synthetic(const data::SequenceBatch& real, const data::SequenceBatch& synthetic,
                                   const eval::ScoreNetConfig& budget, std::uint64_t seed) {
  Rng rng(seed);
  EarlyGenMetrics m;
  m.dis = eval::discriminative_score(real, synthetic, budget, rng.split(0).next_u64());
  m.pre = eval::predictive_score(real, synthetic, budget, rng.split(1).next_u64());
  const eval::MomentGaps gaps = eval::moment_gaps(real, synthetic);
  m.mse_mean = gaps.mse_mean;
  m.mse_std = gaps.mse_std;
  return m;
}

const EarlyGenRecord& early_generation_check(const data::SequenceBatch& real, const data::SequenceBatch& synthetic,
                                             const nn::ModelBundle<float>& bundle, EarlyGenState& state, long epoch,
                                             const eval::ScoreNetConfig& budget, std::uint64_t seed) {
  const EarlyGenRecord& rec = record_evaluation(state, epoch, evaluate_synthetic(real, synthetic, budget, seed));
  if (rec.saved) {
    state.best_synthetic = synthetic;
    state.best_checkpoint = bundle;
  }
  return rec;
}

}  // namespace chronogan::train
