// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "chronogan/trainer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "chronogan/errors.hpp"
#include "chronogan/ops.hpp"
#include "chronogan/rng.hpp"

namespace chronogan::train {

using ad::Graph;
using ad::Parameter;
using ad::Tensor;
using ad::Var;
using nn::Role;
using nn::Sequence;

void TrainConfig::validate() const {
  if (epochs_phase1 < 0 || epochs_phase2 < 0 || epochs_phase3 < 0) throw ContractError("epoch counts must be >= 0");
  if (batch_size == 0) throw ContractError("batch_size must be positive");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw ContractError("learning_rate must be positive");
  if (check_epoch < 1) throw ContractError("check_epoch must be at least 1");
  if (eval_budget_steps == 0) throw ContractError("eval_budget_steps must be positive");
  weights.validate();
}

namespace {

std::vector<Parameter<float>*> join(std::vector<Parameter<float>*> a, const std::vector<Parameter<float>*>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Sequence<float> forward(Graph<float>& g, Role role, const Sequence<float>& in, nn::ModelBundle<float>& bundle) {
  return nn::role_forward(g, role, in, bundle);
}

double scalar(const Var<float>& v) { return static_cast<double>(v.value().item()); }

}  // namespace

Trainer::Trainer(TrainConfig config, data::SequenceBatch data, nn::ModelBundle<float>& bundle, TrainHooks hooks)
    : config_(std::move(config)),
      data_(std::move(data)),
      bundle_(bundle),
      hooks_(std::move(hooks)),
      batch_rng_(Rng(config_.seed).split(101)),
      noise_rng_(Rng(config_.seed).split(102)),
      eval_rng_(Rng(config_.seed).split(103)) {
  config_.validate();
  if (data_.empty()) throw ContractError("training data is empty");
  if (!data_.norm()) throw ContractError("training data must be min-max normalized");
  data_.validate();
  if (data_.features() != bundle_.dims().feature_dim) {
    throw ContractError("data has " + std::to_string(data_.features()) + " features; model expects " +
                        std::to_string(bundle_.dims().feature_dim));
  }
  ts_weights_ = loss::time_weights(config_.ts_weights, data_.steps());

  const ad::AdamOptions opts{.learning_rate = config_.learning_rate};
  discriminator_opt_ = ad::Adam<float>(bundle_.parameters(Role::discriminator), opts);
  autoencoder_opt_ = ad::Adam<float>(join(bundle_.parameters(Role::encoder), bundle_.parameters(Role::decoder)), opts);
  supervisor_opt_ = ad::Adam<float>(bundle_.parameters(Role::supervisor), opts);
  generator_opt_ =
      ad::Adam<float>(join(bundle_.parameters(Role::generator), bundle_.parameters(Role::supervisor)), opts);
}

std::vector<std::size_t> Trainer::next_batch() {
  const std::size_t n = data_.samples();
  const std::size_t k = std::min(config_.batch_size, n);
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + batch_rng_.below(n - i)]);
  idx.resize(k);
  return idx;
}

Tensor<float> Trainer::noise(std::size_t n) {
  Tensor<float> z(ad::Shape{n, data_.steps(), bundle_.dims().noise_dim});
  for (float& v : z.values()) v = static_cast<float>(noise_rng_.uniform());
  return z;
}

template <typename Step>
std::vector<EpochLosses> Trainer::run_phase(int phase, long epochs, Step step) {
  std::vector<EpochLosses> log;
  log.reserve(static_cast<std::size_t>(epochs));
  for (long epoch = 1; epoch <= epochs; ++epoch) {
    const nn::ModelBundle<float> snapshot = bundle_;
    EpochLosses losses;
    losses.phase = phase;
    losses.epoch = epoch;
    try {
      step(epoch, losses);
    } catch (const DomainError& e) {
      bundle_.assign_values(snapshot);
      throw TrainingDiverged(phase, epoch, epoch - 1, e.what());
    }
    log.push_back(losses);
    if (hooks_.on_epoch) hooks_.on_epoch(losses);
  }
  return log;
}

std::vector<EpochLosses> Trainer::train_phase1() {
  return run_phase(1, config_.epochs_phase1, [this](long, EpochLosses& out) {
    const Tensor<float> x = data_.subset(next_batch()).to_tensor<float>();

    {  // discriminator: real X vs fake X^AE
      Graph<float> g;
      g.track_only(discriminator_opt_.params());
      const auto xs = nn::constant_sequence(g, x);
      const auto x_ae = forward(g, Role::decoder, forward(g, Role::encoder, xs, bundle_), bundle_);
      if (hooks_.on_discriminator_batch) hooks_.on_discriminator_batch(1, {"X"}, {"X_AE"});
      Var<float> y_real = nn::stack_time(forward(g, Role::discriminator, xs, bundle_));
      Var<float> y_fake = nn::stack_time(forward(g, Role::discriminator, x_ae, bundle_));
      Var<float> d_loss = loss::discriminator_loss(y_real, y_fake);
      discriminator_opt_.zero_grad();
      g.backward(d_loss);
      discriminator_opt_.step();
      out.discriminator = scalar(d_loss);
    }
    {  // encoder + decoder
      Graph<float> g;
      g.track_only(autoencoder_opt_.params());
      const auto xs = nn::constant_sequence(g, x);
      const auto x_ae = forward(g, Role::decoder, forward(g, Role::encoder, xs, bundle_), bundle_);
      Var<float> recon = loss::reconstruction_loss(g.constant(x), nn::stack_time(x_ae));
      Var<float> adv = loss::generator_adversarial_loss(nn::stack_time(forward(g, Role::discriminator, x_ae, bundle_)));
      Var<float> total = loss::compose_autoencoder_loss(config_.weights, recon, adv, 1);
      autoencoder_opt_.zero_grad();
      g.backward(total);
      autoencoder_opt_.step();
      out.reconstruction = scalar(recon);
      out.adversarial_ae = scalar(adv);
      out.autoencoder = scalar(total);
    }
  });
}

std::vector<EpochLosses> Trainer::train_phase2() {
  if (data_.steps() < 3) throw ContractError("phase 2 needs sequences of at least three timesteps");
  return run_phase(2, config_.epochs_phase2, [this](long, EpochLosses& out) {
    const Tensor<float> x = data_.subset(next_batch()).to_tensor<float>();
    Graph<float> g;
    g.track_only(supervisor_opt_.params());
    const auto h = forward(g, Role::encoder, nn::constant_sequence(g, x), bundle_);
    const auto s = forward(g, Role::supervisor, h, bundle_);
    Var<float> sup = loss::supervised_loss(nn::stack_time(h), nn::stack_time(s));
    supervisor_opt_.zero_grad();
    g.backward(sup);
    supervisor_opt_.step();
    out.supervised = scalar(sup);
  });
}

std::vector<EpochLosses> Trainer::train_phase3(EarlyGenState& state) {
  if (data_.steps() < 3) throw ContractError("phase 3 needs sequences of at least three timesteps");
  eval::ScoreNetConfig budget;
  budget.steps = config_.eval_budget_steps;

  return run_phase(3, config_.epochs_phase3, [this, &state, &budget](long epoch, EpochLosses& out) {
    const Tensor<float> x = data_.subset(next_batch()).to_tensor<float>();
    const Tensor<float> z = noise(x.dim(0));

    {  // discriminator: real {X, X^AE} vs fake {X^G, X~}
      Graph<float> g;
      g.track_only(discriminator_opt_.params());
      const auto xs = nn::constant_sequence(g, x);
      const auto x_ae = forward(g, Role::decoder, forward(g, Role::encoder, xs, bundle_), bundle_);
      const auto e_hat = forward(g, Role::generator, nn::constant_sequence(g, z), bundle_);
      const auto x_g = forward(g, Role::decoder, e_hat, bundle_);
      const auto x_tilde = forward(g, Role::decoder, forward(g, Role::supervisor, e_hat, bundle_), bundle_);
      if (hooks_.on_discriminator_batch) hooks_.on_discriminator_batch(3, {"X", "X_AE"}, {"X_G", "X_tilde"});
      Var<float> y_real = nn::stack_time(forward(g, Role::discriminator, nn::concat_batch(xs, x_ae), bundle_));
      Var<float> y_fake = nn::stack_time(forward(g, Role::discriminator, nn::concat_batch(x_g, x_tilde), bundle_));
      Var<float> d_loss = loss::discriminator_loss(y_real, y_fake);
      discriminator_opt_.zero_grad();
      g.backward(d_loss);
      discriminator_opt_.step();
      out.discriminator = scalar(d_loss);
    }
    {  // generator + supervisor
      Graph<float> g;
      g.track_only(generator_opt_.params());
      const auto e_hat = forward(g, Role::generator, nn::constant_sequence(g, z), bundle_);
      const auto h_hat = forward(g, Role::supervisor, e_hat, bundle_);
      const auto x_g = forward(g, Role::decoder, e_hat, bundle_);
      const auto x_tilde = forward(g, Role::decoder, h_hat, bundle_);
      Var<float> x_tilde_v = nn::stack_time(x_tilde);
      Var<float> xv = g.constant(x);
      // The two fake heads share the adversarial weight equally.
      Var<float> adv = ad::scale(
          ad::add(loss::generator_adversarial_loss(nn::stack_time(forward(g, Role::discriminator, x_g, bundle_))),
                  loss::generator_adversarial_loss(nn::stack_time(forward(g, Role::discriminator, x_tilde, bundle_)))),
          0.5f);
      Var<float> sup = loss::supervised_loss(nn::stack_time(e_hat), nn::stack_time(h_hat));
      Var<float> mom = loss::moment_loss(xv, x_tilde_v);
      Var<float> ts = loss::ts_loss(xv, x_tilde_v, std::span<const double>(ts_weights_));
      Var<float> total = loss::compose_generator_loss(config_.weights, adv, sup, mom, ts);
      generator_opt_.zero_grad();
      g.backward(total);
      generator_opt_.step();
      out.adversarial_g = scalar(adv);
      out.supervised = scalar(sup);
      out.moment = scalar(mom);
      out.ts = scalar(ts);
      out.generator = scalar(total);
    }
    {  // encoder + decoder
      Graph<float> g;
      g.track_only(autoencoder_opt_.params());
      const auto xs = nn::constant_sequence(g, x);
      const auto x_ae = forward(g, Role::decoder, forward(g, Role::encoder, xs, bundle_), bundle_);
      Var<float> recon = loss::reconstruction_loss(g.constant(x), nn::stack_time(x_ae));
      Var<float> adv = loss::generator_adversarial_loss(nn::stack_time(forward(g, Role::discriminator, x_ae, bundle_)));
      Var<float> total = loss::compose_autoencoder_loss(config_.weights, recon, adv, 3);
      autoencoder_opt_.zero_grad();
      g.backward(total);
      autoencoder_opt_.step();
      out.reconstruction = scalar(recon);
      out.adversarial_ae = scalar(adv);
      out.autoencoder = scalar(total);
    }

    if (is_check_epoch(epoch, config_.epochs_phase3, config_.check_epoch)) {
      Rng r = eval_rng_.split(static_cast<std::uint64_t>(epoch));
      const data::SequenceBatch synthetic = generate(bundle_, data_.samples(), data_.steps(), r.split(0).next_u64());
      const EarlyGenRecord& rec =
          early_generation_check(data_, synthetic, bundle_, state, epoch, budget, r.split(1).next_u64());
      if (hooks_.on_early_generation) hooks_.on_early_generation(rec);
    }
  });
}

std::vector<EpochLosses> Trainer::run(EarlyGenState& state) {
  std::vector<EpochLosses> log = train_phase1();
  auto p2 = train_phase2();
  log.insert(log.end(), p2.begin(), p2.end());
  auto p3 = train_phase3(state);
  log.insert(log.end(), p3.begin(), p3.end());
  return log;
}

data::SequenceBatch generate(nn::ModelBundle<float>& bundle, std::size_t n, std::size_t steps, std::uint64_t seed) {
  const std::size_t f = bundle.dims().feature_dim;
  if (steps == 0) throw ContractError("sequence length must be positive");
  if (n == 0) return data::SequenceBatch(0, steps, f);

  Rng rng(seed);
  std::vector<double> values;
  values.reserve(n * steps * f);
  constexpr std::size_t kChunk = 1024;
  for (std::size_t begin = 0; begin < n; begin += kChunk) {
    const std::size_t count = std::min(kChunk, n - begin);
    Tensor<float> z(ad::Shape{count, steps, bundle.dims().noise_dim});
    for (float& v : z.values()) v = static_cast<float>(rng.uniform());
    Graph<float> g;
    g.track_only({});
    const auto e_hat = forward(g, Role::generator, nn::constant_sequence(g, z), bundle);
    const auto x_tilde = forward(g, Role::decoder, forward(g, Role::supervisor, e_hat, bundle), bundle);
    const Tensor<float>& out = nn::stack_time(x_tilde).value();
    values.insert(values.end(), out.values().begin(), out.values().end());
  }
  return data::SequenceBatch(n, steps, f, std::move(values));
}

namespace {

void write_cell(std::ostream& out, double v) {
  out << ',';
  if (std::isnan(v)) return;
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, res.ptr - buf);
}

}  // namespace

void write_train_log(const std::vector<EpochLosses>& log, std::ostream& out) {
  out << "phase,epoch,discriminator,reconstruction,adversarial_ae,autoencoder,supervised,adversarial_g,moment,ts,"
         "generator\n";
  for (const EpochLosses& l : log) {
    out << l.phase << ',' << l.epoch;
    for (double v : {l.discriminator, l.reconstruction, l.adversarial_ae, l.autoencoder, l.supervised,
                     l.adversarial_g, l.moment, l.ts, l.generator}) {
      write_cell(out, v);
    }
    out << '\n';
  }
}

void write_early_gen_history(const EarlyGenState& state, std::ostream& out) {
  out << "epoch,dis_score,pre_score,mse_mean,mse_std,score,saved,guarded\n";
  for (const EarlyGenRecord& r : state.history) {
    out << r.epoch;
    for (double v : {r.metrics.dis, r.metrics.pre, r.metrics.mse_mean, r.metrics.mse_std, r.score}) write_cell(out, v);
    out << ',' << (r.saved ? 1 : 0) << ',' << (r.guarded ? 1 : 0) << '\n';
  }
}

}  // namespace chronogan::train
