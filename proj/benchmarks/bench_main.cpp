// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include <benchmark/benchmark.h>

#include "chronogan/dataset.hpp"
#include "chronogan/losses.hpp"
#include "chronogan/ops.hpp"
#include "chronogan/recurrent.hpp"
#include "chronogan/rng.hpp"

namespace {

using namespace chronogan;

ad::Tensor<float> uniform(Rng& rng, ad::Shape shape) {
  ad::Tensor<float> t(shape);
  for (auto& v : t.values()) v = static_cast<float>(rng.uniform(-1, 1));
  return t;
}

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  ad::Parameter<float> a("a", uniform(rng, ad::Shape{128, n})), b("b", uniform(rng, ad::Shape{n, n}));
  for (auto _ : state) {
    ad::Graph<float> g;
    auto y = ad::sum_all(ad::matmul(g.param(a), g.param(b)));
    g.backward(y);
    benchmark::DoNotOptimize(b.grad.data());
  }
}
BENCHMARK(BM_Matmul)->Arg(24)->Arg(48)->Arg(96);

// One forward and backward pass of a hybrid block over a (batch x 24 x F) sequence,
// the shape used by every network during desk-scale training.
void BM_HybridForwardBackward(benchmark::State& state) {
  const auto batch = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  auto block = nn::make_hybrid<float>({5, 24, 24, 2, 2}, "bench", nn::Init::uniform, rng);
  std::vector<ad::Parameter<float>*> params;
  block.collect(params);
  const auto x = uniform(rng, ad::Shape{batch, 24, 5});
  for (auto _ : state) {
    ad::Graph<float> g;
    const auto out = nn::hybrid_forward(g, nn::constant_sequence(g, x), block);
    g.backward(ad::mean_all(ad::square(nn::stack_time(out))));
    benchmark::DoNotOptimize(params.front()->grad.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * batch));
}
BENCHMARK(BM_HybridForwardBackward)->Arg(32)->Arg(128);

void BM_TimeSeriesLoss(benchmark::State& state) {
  Rng rng(3);
  const auto real = data::generate_sines(128, 24, 5, 4).to_tensor<float>();
  const auto synth = uniform(rng, ad::Shape{128, 24, 5});
  for (auto _ : state) {
    ad::Graph<float> g;
    benchmark::DoNotOptimize(loss::ts_loss(g.constant(real), g.constant(synth)).value().item());
  }
}
BENCHMARK(BM_TimeSeriesLoss);

}  // namespace

BENCHMARK_MAIN();
