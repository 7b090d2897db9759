// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "chronogan/dataset.hpp"
#include "chronogan/early_generation.hpp"
#include "chronogan/errors.hpp"
#include "chronogan/trainer.hpp"

namespace chronogan {
namespace {

using nn::Role;
using train::EarlyGenMetrics;
using train::EarlyGenState;

// Tiny architecture and schedule so a full three-phase run takes well under a second.
nn::ModelDims tiny_dims(std::size_t features) {
  nn::ModelDims d = nn::ModelDims::for_features(features);
  d.hidden_dim = 4;
  d.latent_dim = 3;
  d.gru_layers = 1;
  d.lstm_layers = 1;
  return d;
}

train::TrainConfig tiny_config() {
  train::TrainConfig c;
  c.epochs_phase1 = 4;
  c.epochs_phase2 = 4;
  c.epochs_phase3 = 4;
  c.batch_size = 16;
  c.check_epoch = 2;
  c.eval_budget_steps = 5;
  c.seed = 9;
  return c;
}

data::SequenceBatch tiny_data() { return data::generate_sines(40, 6, 2, 3); }

std::vector<ad::Tensor<float>> snapshot(const nn::ModelBundle<float>& b) {
  std::vector<ad::Tensor<float>> out;
  for (const auto* p : b.parameters()) out.push_back(p->value);
  return out;
}

std::vector<double> vals(const data::SequenceBatch& b) { return {b.values().begin(), b.values().end()}; }

bool role_unchanged(nn::ModelBundle<float>& b, Role r, nn::ModelBundle<float> before) {
  auto now = b.parameters(r);
  auto then = before.parameters(r);
  for (std::size_t i = 0; i < now.size(); ++i)
    if (!(now[i]->value == then[i]->value)) return false;
  return true;
}

TEST(Schedule, FiresFromHalfwayOnMultiples) {
  EXPECT_EQ(train::check_schedule(4000, 500), (std::vector<long>{2000, 2500, 3000, 3500, 4000}));
  EXPECT_EQ(train::check_schedule(10, 3), (std::vector<long>{6, 9}));
  // floor(N / 2) for odd N: 4001 / 2 = 2000, so 2000 is included.
  EXPECT_EQ(train::check_schedule(4001, 500).front(), 2000);
  EXPECT_TRUE(train::check_schedule(400, 500).empty());
  EXPECT_FALSE(train::is_check_epoch(0, 4000, 500));
  EXPECT_FALSE(train::is_check_epoch(4500, 4000, 500));
  EXPECT_THROW(train::is_check_epoch(10, 10, 0), ContractError);
}

TEST(EarlyGeneration, RatiosFixedAtFirstEvaluation) {
  EarlyGenState s;
  train::record_evaluation(s, 2000, {0.4, 0.2, 0.01, 0.03});
  ASSERT_TRUE(s.p1 && s.p2);
  EXPECT_DOUBLE_EQ(*s.p1, 2.0);
  EXPECT_DOUBLE_EQ(*s.p2, 10.0);
  EXPECT_DOUBLE_EQ(s.history[0].score, 0.4 + 2.0 * 0.2 + 10.0 * 0.04);
  EXPECT_TRUE(s.history[0].saved);

  // Worse on every metric: not saved, ratios unchanged.
  train::record_evaluation(s, 2500, {0.45, 0.3, 0.02, 0.03});
  EXPECT_DOUBLE_EQ(*s.p1, 2.0);
  EXPECT_FALSE(s.history[1].saved);
  EXPECT_EQ(*s.best_epoch, 2000);

  // Equal score counts as an improvement.
  train::record_evaluation(s, 3000, {0.4, 0.2, 0.02, 0.02});
  EXPECT_TRUE(s.history[2].saved);
  EXPECT_EQ(*s.best_epoch, 3000);
}

TEST(EarlyGeneration, GuardedDenominators) {
  EarlyGenState s;
  const auto& r = train::record_evaluation(s, 10, {0.3, 0.0, 0.0, 0.0});
  EXPECT_TRUE(r.guarded);
  EXPECT_DOUBLE_EQ(*s.p1, 0.3 / train::kRatioGuard);
  EXPECT_DOUBLE_EQ(r.score, 0.3);
}

TEST(EarlyGeneration, RejectsBadMetrics) {
  EarlyGenState s;
  EXPECT_THROW(train::record_evaluation(s, 1, {-0.1, 0.1, 0.1, 0.1}), DomainError);
  EXPECT_THROW(train::record_evaluation(s, 1, {0.1, NAN, 0.1, 0.1}), DomainError);
  EXPECT_TRUE(s.history.empty());
}

TEST(Config, Validation) {
  train::TrainConfig c;
  EXPECT_NO_THROW(c.validate());
  c.batch_size = 0;
  EXPECT_THROW(c.validate(), ContractError);
  c = {};
  c.learning_rate = 0;
  EXPECT_THROW(c.validate(), ContractError);
  c = {};
  c.epochs_phase3 = -1;
  EXPECT_THROW(c.validate(), ContractError);
  c = {};
  c.epochs_phase1 = c.epochs_phase2 = c.epochs_phase3 = 0;
  EXPECT_NO_THROW(c.validate());
}

TEST(Trainer, RejectsUnsuitableData) {
  Rng rng(1);
  nn::ModelBundle<float> b(tiny_dims(2), nn::Init::uniform, rng);
  EXPECT_THROW(train::Trainer(tiny_config(), data::generate_sines(10, 6, 2, 1, false), b), ContractError);
  EXPECT_THROW(train::Trainer(tiny_config(), data::generate_sines(10, 6, 3, 1), b), ContractError);
}

TEST(Trainer, PhaseOneLeavesGeneratorAndSupervisor) {
  Rng rng(2);
  nn::ModelBundle<float> b(tiny_dims(2), nn::Init::uniform, rng);
  const nn::ModelBundle<float> before = b;
  train::Trainer t(tiny_config(), tiny_data(), b);
  const auto log = t.train_phase1();
  EXPECT_EQ(log.size(), 4u);
  EXPECT_TRUE(role_unchanged(b, Role::generator, before));
  EXPECT_TRUE(role_unchanged(b, Role::supervisor, before));
  EXPECT_FALSE(role_unchanged(b, Role::encoder, before));
  EXPECT_FALSE(role_unchanged(b, Role::decoder, before));
  EXPECT_FALSE(role_unchanged(b, Role::discriminator, before));
  EXPECT_TRUE(std::isnan(log[0].supervised));
  EXPECT_FALSE(std::isnan(log[0].reconstruction));
}

TEST(Trainer, PhaseTwoTouchesOnlySupervisor) {
  Rng rng(3);
  nn::ModelBundle<float> b(tiny_dims(2), nn::Init::uniform, rng);
  train::Trainer t(tiny_config(), tiny_data(), b);
  t.train_phase1();
  const nn::ModelBundle<float> before = b;
  t.train_phase2();
  for (Role r : {Role::encoder, Role::decoder, Role::generator, Role::discriminator})
    EXPECT_TRUE(role_unchanged(b, r, before)) << nn::role_name(r);
  EXPECT_FALSE(role_unchanged(b, Role::supervisor, before));
}

TEST(Trainer, PhaseThreeDiscriminatorSeesAllFourSources) {
  Rng rng(4);
  nn::ModelBundle<float> b(tiny_dims(2), nn::Init::uniform, rng);
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> seen;
  train::TrainHooks hooks;
  hooks.on_discriminator_batch = [&](int phase, const auto& real, const auto& fake) {
    if (phase == 3) seen.emplace_back(real, fake);
  };
  train::Trainer t(tiny_config(), tiny_data(), b, hooks);
  EarlyGenState state;
  t.run(state);
  ASSERT_EQ(seen.size(), 4u);
  EXPECT_EQ(seen[0].first, (std::vector<std::string>{"X", "X_AE"}));
  EXPECT_EQ(seen[0].second, (std::vector<std::string>{"X_G", "X_tilde"}));
}

TEST(Trainer, EarlyGenerationRunsOnSchedule) {
  Rng rng(5);
  nn::ModelBundle<float> b(tiny_dims(2), nn::Init::uniform, rng);
  std::vector<long> fired;
  train::TrainHooks hooks;
  hooks.on_early_generation = [&](const train::EarlyGenRecord& r) { fired.push_back(r.epoch); };
  train::Trainer t(tiny_config(), tiny_data(), b, hooks);
  EarlyGenState state;
  t.run(state);
  EXPECT_EQ(fired, (std::vector<long>{2, 4}));
  ASSERT_TRUE(state.best_synthetic && state.best_checkpoint);
  EXPECT_EQ(state.best_synthetic->samples(), 40u);
  EXPECT_LE(*state.total_error, state.history.front().score);
}

TEST(Trainer, DeterministicForAFixedSeed) {
  auto run_once = [] {
    Rng rng(6);
    nn::ModelBundle<float> b(tiny_dims(2), nn::Init::uniform, rng);
    train::Trainer t(tiny_config(), tiny_data(), b);
    EarlyGenState state;
    std::ostringstream log;
    train::write_train_log(t.run(state), log);
    return std::make_pair(log.str(), snapshot(b));
  };
  const auto a = run_once(), b = run_once();
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.second, b.second);
}

TEST(Trainer, DivergenceRestoresLastHealthyState) {
  Rng rng(7);
  nn::ModelBundle<float> b(tiny_dims(2), nn::Init::uniform, rng);
  auto cfg = tiny_config();
  cfg.learning_rate = 1e38;
  std::vector<std::vector<ad::Tensor<float>>> after_epoch;
  train::TrainHooks hooks;
  hooks.on_epoch = [&](const train::EpochLosses&) { after_epoch.push_back(snapshot(b)); };
  const auto initial = snapshot(b);
  train::Trainer t(cfg, tiny_data(), b, hooks);
  try {
    t.train_phase1();
    FAIL() << "expected divergence";
  } catch (const TrainingDiverged& e) {
    EXPECT_EQ(e.phase(), 1);
    EXPECT_EQ(e.last_healthy_epoch(), e.epoch() - 1);
    EXPECT_EQ(static_cast<long>(after_epoch.size()), e.last_healthy_epoch());
    EXPECT_EQ(snapshot(b), after_epoch.empty() ? initial : after_epoch.back());
  }
}

TEST(Generate, ShapesRangeAndDeterminism) {
  Rng rng(8);
  nn::ModelBundle<float> b(tiny_dims(3), nn::Init::uniform, rng);
  const auto x = train::generate(b, 7, 5, 42);
  EXPECT_EQ(x.samples(), 7u);
  EXPECT_EQ(x.steps(), 5u);
  EXPECT_EQ(x.features(), 3u);
  for (double v : x.values()) {
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
  EXPECT_EQ(vals(train::generate(b, 7, 5, 42)), vals(x));
  EXPECT_NE(vals(train::generate(b, 7, 5, 43)), vals(x));
  EXPECT_TRUE(train::generate(b, 0, 5, 1).empty());
}

TEST(Logs, UnrecordedColumnsAreEmpty) {
  train::EpochLosses e;
  e.phase = 2;
  e.epoch = 1;
  e.supervised = 0.5;
  std::ostringstream out;
  train::write_train_log({e}, out);
  const std::string s = out.str();
  EXPECT_EQ(s.substr(0, s.find('\n')),
            "phase,epoch,discriminator,reconstruction,adversarial_ae,autoencoder,supervised,adversarial_g,moment,ts,"
            "generator");
  EXPECT_NE(s.find("2,1,,,,,0.5,,,,"), std::string::npos);
}

}  // namespace
}  // namespace chronogan
