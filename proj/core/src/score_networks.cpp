// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "chronogan/score_networks.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "chronogan/adam.hpp"
#include "chronogan/errors.hpp"
#include "chronogan/ops.hpp"
#include "chronogan/recurrent.hpp"
#include "chronogan/rng.hpp"

namespace chronogan::eval {

using ad::Graph;
using ad::Shape;
using ad::Tensor;
using ad::Var;
using data::SequenceBatch;

std::size_t ScoreNetConfig::hidden_for(std::size_t features) const {
  return hidden.value_or(std::max<std::size_t>(4, features / 2));
}

namespace {

using Real = float;

// Rows `idx` of `batch`, restricted to timesteps [t0, t1), as (n x T' x F).
Tensor<Real> gather(const SequenceBatch& batch, std::span<const std::size_t> idx, std::size_t t0, std::size_t t1) {
  const std::size_t f = batch.features();
  Tensor<Real> out(Shape{idx.size(), t1 - t0, f});
  std::size_t k = 0;
  for (std::size_t n : idx) {
    for (std::size_t t = t0; t < t1; ++t) {
      for (std::size_t j = 0; j < f; ++j) out[k++] = static_cast<Real>(batch.at(n, t, j));
    }
  }
  return out;
}

std::vector<std::size_t> draw(Rng& rng, std::span<const std::size_t> pool, std::size_t k) {
  k = std::min(k, pool.size());
  std::vector<std::size_t> picked(pool.begin(), pool.end());
  // Partial Fisher-Yates: the first k slots become a uniform sample without replacement.
  for (std::size_t i = 0; i < k; ++i) std::swap(picked[i], picked[i + rng.below(picked.size() - i)]);
  picked.resize(k);
  return picked;
}

struct LstmHead {
  nn::CellParams<Real> cell;
  nn::DenseParams<Real> head;

  std::vector<ad::Parameter<Real>*> parameters() {
    std::vector<ad::Parameter<Real>*> out;
    cell.collect(out);
    out.push_back(&head.weight);
    out.push_back(&head.bias);
    return out;
  }
};

LstmHead make_net(std::size_t in, std::size_t hidden, std::size_t out, Rng& rng) {
  return {nn::make_cell<Real>(nn::CellKind::lstm, in, hidden, "score/lstm", nn::Init::uniform, rng),
          nn::make_dense<Real>(hidden, out, "score/head", nn::Init::uniform, rng)};
}

// Probability of "real" per sample from the last hidden state.
Var<Real> classify(Graph<Real>& g, LstmHead& net, const Tensor<Real>& x) {
  const auto hidden = nn::run_cell(g, nn::constant_sequence(g, x), net.cell);
  return ad::sigmoid(nn::dense(g, hidden.back(), net.head));
}

// Next-step predictions stacked as (n x T' x F).
Var<Real> predict(Graph<Real>& g, LstmHead& net, const Tensor<Real>& x) {
  const auto hidden = nn::run_cell(g, nn::constant_sequence(g, x), net.cell);
  nn::Sequence<Real> out;
  out.reserve(hidden.size());
  for (const auto& h : hidden) out.push_back(ad::sigmoid(nn::dense(g, h, net.head)));
  return nn::stack_time(out);
}

void require_same_layout(const SequenceBatch& a, const SequenceBatch& b) {
  if (a.steps() != b.steps() || a.features() != b.features()) {
    throw ContractError("real and synthetic sets differ in sequence length or feature count");
  }
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split(std::size_t n, double fraction, Rng& rng) {
  auto order = rng.permutation(n);
  const auto n_train = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));
  std::vector<std::size_t> train(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  return {std::move(train), std::move(test)};
}

}  // namespace

double discriminative_score(const SequenceBatch& real, const SequenceBatch& synth, const ScoreNetConfig& cfg,
                            std::uint64_t seed) {
  require_same_layout(real, synth);
  if (real.samples() < 10 || synth.samples() < 10) {
    throw ContractError("discriminative score needs at least 10 sequences per side");
  }
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) throw ContractError("train fraction must be in (0, 1)");

  Rng root(seed);
  Rng split_rng = root.split(0);
  Rng init_rng = root.split(1);
  Rng batch_rng = root.split(2);
  const auto [real_train, real_test] = split(real.samples(), cfg.train_fraction, split_rng);
  const auto [synth_train, synth_test] = split(synth.samples(), cfg.train_fraction, split_rng);

  const std::size_t steps = real.steps();
  LstmHead net = make_net(real.features(), cfg.hidden_for(real.features()), 1, init_rng);
  ad::Adam<Real> opt(net.parameters(), {.learning_rate = cfg.learning_rate});
  const Real lo = Real(1e-7);

  for (std::size_t it = 0; it < cfg.steps; ++it) {
    const auto rb = draw(batch_rng, real_train, cfg.batch_size);
    const auto sb = draw(batch_rng, synth_train, cfg.batch_size);
    Graph<Real> g;
    Var<Real> p_real = ad::clamp(classify(g, net, gather(real, rb, 0, steps)), lo, Real(1) - lo);
    Var<Real> p_fake = ad::clamp(classify(g, net, gather(synth, sb, 0, steps)), lo, Real(1) - lo);
    // Binary cross-entropy with the two sides weighted equally.
    Var<Real> loss = ad::add(ad::mean_all(ad::log(p_real)),
                             ad::mean_all(ad::log(ad::add_scalar(ad::scale(p_fake, Real(-1)), Real(1)))));
    loss = ad::scale(loss, Real(-0.5));
    opt.zero_grad();
    g.backward(loss);
    opt.step();
  }

  std::size_t correct = 0;
  {
    Graph<Real> g;
    for (Real p : classify(g, net, gather(real, real_test, 0, steps)).value().values()) correct += p > Real(0.5);
    for (Real p : classify(g, net, gather(synth, synth_test, 0, steps)).value().values()) correct += p <= Real(0.5);
  }
  const double accuracy = static_cast<double>(correct) / static_cast<double>(real_test.size() + synth_test.size());
  return std::abs(accuracy - 0.5);
}

double predictive_score(const SequenceBatch& real, const SequenceBatch& synth, const ScoreNetConfig& cfg,
                        std::uint64_t seed) {
  require_same_layout(real, synth);
  const std::size_t steps = real.steps();
  if (steps < 2) throw ContractError("predictive score needs T >= 2");
  if (real.empty() || synth.empty()) throw ContractError("predictive score needs non-empty sets");

  Rng root(seed);
  Rng init_rng = root.split(1);
  Rng batch_rng = root.split(2);
  std::vector<std::size_t> synth_all(synth.samples());
  for (std::size_t i = 0; i < synth_all.size(); ++i) synth_all[i] = i;

  LstmHead net = make_net(real.features(), cfg.hidden_for(real.features()), real.features(), init_rng);
  ad::Adam<Real> opt(net.parameters(), {.learning_rate = cfg.learning_rate});

  for (std::size_t it = 0; it < cfg.steps; ++it) {
    const auto b = draw(batch_rng, synth_all, cfg.batch_size);
    Graph<Real> g;
    Var<Real> pred = predict(g, net, gather(synth, b, 0, steps - 1));
    Var<Real> target = g.constant(gather(synth, b, 1, steps));
    Var<Real> loss = ad::mean_all(ad::abs(ad::sub(pred, target)));
    opt.zero_grad();
    g.backward(loss);
    opt.step();
  }

  // Evaluate in chunks to bound memory on large real sets.
  double abs_error = 0.0;
  std::size_t count = 0;
  constexpr std::size_t kChunk = 512;
  for (std::size_t begin = 0; begin < real.samples(); begin += kChunk) {
    const std::size_t end = std::min(real.samples(), begin + kChunk);
    std::vector<std::size_t> idx(end - begin);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = begin + i;
    Graph<Real> g;
    const Tensor<Real> target = gather(real, idx, 1, steps);
    const Tensor<Real> pred = predict(g, net, gather(real, idx, 0, steps - 1)).value();
    for (std::size_t i = 0; i < pred.size(); ++i) abs_error += std::abs(static_cast<double>(pred[i] - target[i]));
    count += pred.size();
  }
  return abs_error / static_cast<double>(count);
}

}  // namespace chronogan::eval
