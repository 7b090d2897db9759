// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include <gtest/gtest.h>

#include <set>

#include "chronogan/errors.hpp"
#include "chronogan/model_bundle.hpp"
#include "chronogan/ops.hpp"
#include "chronogan/recurrent.hpp"
#include "oracles.hpp"

namespace chronogan {
namespace {

using ad::Graph;
using ad::Shape;
using ad::Tensor;
using nn::CellKind;
using nn::Init;
using testing::GateWeights;

std::vector<GateWeights> gate_weights(const nn::CellParams<double>& cell) {
  std::vector<GateWeights> out;
  for (std::size_t g = 0; g < cell.gate_count(); ++g) {
    auto vec = [](const Tensor<double>& t) { return std::vector<double>(t.values().begin(), t.values().end()); };
    out.push_back({vec(cell.input_weights[g].value), vec(cell.recurrent_weights[g].value), vec(cell.biases[g].value)});
  }
  return out;
}

std::vector<double> row(const Tensor<double>& t, std::size_t i) {
  const std::size_t w = t.dim(1);
  return {t.values().begin() + static_cast<long>(i * w), t.values().begin() + static_cast<long>((i + 1) * w)};
}

TEST(Cells, GruStepMatchesOracle) {
  Rng rng(11);
  const std::size_t in = 3, hid = 4, n = 5;
  auto cell = nn::make_cell<double>(CellKind::gru, in, hid, "g", Init::uniform, rng);
  const auto x = testing::random_tensor(rng, Shape{n, in});
  const auto h = testing::random_tensor(rng, Shape{n, hid});
  Graph<double> g;
  auto bound = nn::bind(g, cell);
  auto out = nn::gru_step(g.constant(x), g.constant(h), bound).value();
  const auto gw = gate_weights(cell);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ref = testing::gru_step_oracle(row(x, i), row(h, i), gw, in, hid);
    for (std::size_t j = 0; j < hid; ++j) EXPECT_NEAR(out[i * hid + j], ref[j], 1e-14);
  }
}

TEST(Cells, LstmStepMatchesOracle) {
  Rng rng(12);
  const std::size_t in = 2, hid = 3, n = 4;
  auto cell = nn::make_cell<double>(CellKind::lstm, in, hid, "l", Init::uniform, rng);
  const auto x = testing::random_tensor(rng, Shape{n, in});
  const auto h = testing::random_tensor(rng, Shape{n, hid});
  const auto c = testing::random_tensor(rng, Shape{n, hid});
  Graph<double> g;
  auto bound = nn::bind(g, cell);
  auto [h2, c2] = nn::lstm_step(g.constant(x), g.constant(h), g.constant(c), bound);
  const auto gw = gate_weights(cell);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [rh, rc] = testing::lstm_step_oracle(row(x, i), row(h, i), row(c, i), gw, in, hid);
    for (std::size_t j = 0; j < hid; ++j) {
      EXPECT_NEAR(h2.value()[i * hid + j], rh[j], 1e-14);
      EXPECT_NEAR(c2.value()[i * hid + j], rc[j], 1e-14);
    }
  }
}

TEST(Cells, WrongKindIsAContractError) {
  Rng rng(1);
  auto cell = nn::make_cell<double>(CellKind::lstm, 2, 2, "l", Init::zero, rng);
  Graph<double> g;
  auto bound = nn::bind(g, cell);
  auto z = g.constant(Tensor<double>(Shape{1, 2}));
  EXPECT_THROW(nn::gru_step(z, z, bound), ContractError);
}

TEST(Cells, StateWidthIsChecked) {
  Rng rng(1);
  auto cell = nn::make_cell<double>(CellKind::gru, 2, 3, "g", Init::zero, rng);
  Graph<double> g;
  auto bound = nn::bind(g, cell);
  auto x = g.constant(Tensor<double>(Shape{1, 2}));
  EXPECT_THROW(nn::gru_step(x, g.constant(Tensor<double>(Shape{1, 2})), bound), ShapeError);
}

TEST(Cells, ZeroWeightsKeepZeroState) {
  Rng rng(1);
  for (CellKind kind : {CellKind::gru, CellKind::lstm}) {
    auto cell = nn::make_cell<double>(kind, 2, 3, "c", Init::zero, rng);
    Graph<double> g;
    const auto seq = nn::constant_sequence(g, testing::random_tensor(rng, Shape{2, 4, 2}));
    for (const auto& h : nn::run_cell(g, seq, cell)) {
      for (double v : h.value().values()) EXPECT_EQ(v, 0.0);
    }
  }
}

TEST(Cells, UniformInitBound) {
  Rng rng(3);
  auto cell = nn::make_cell<double>(CellKind::lstm, 9, 16, "c", Init::uniform, rng);
  for (const auto& w : cell.input_weights)
    for (double v : w.value.values()) EXPECT_LE(std::abs(v), 1.0 / 3.0);
  for (const auto& u : cell.recurrent_weights)
    for (double v : u.value.values()) EXPECT_LE(std::abs(v), 0.25);
}

TEST(Hybrid, ShapesAndValidation) {
  Rng rng(4);
  nn::HybridShape shape{3, 5, 2, 2, 1};
  auto block = nn::make_hybrid<double>(shape, "h", Init::uniform, rng);
  EXPECT_EQ(block.gru_stack.size(), 2u);
  EXPECT_EQ(block.lstm_stack.size(), 1u);
  EXPECT_EQ(block.input_dim(), 3u);
  EXPECT_EQ(block.output_dim(), 2u);
  Graph<double> g;
  const auto seq = nn::constant_sequence(g, testing::random_tensor(rng, Shape{4, 6, 3}));
  const auto out = nn::hybrid_forward(g, seq, block);
  ASSERT_EQ(out.size(), 6u);
  EXPECT_EQ(out[0].shape(), (Shape{4, 2}));

  EXPECT_THROW(nn::make_hybrid<double>({3, 5, 2, 0, 1}, "h", Init::zero, rng), ContractError);
  block.lstm_stack.clear();
  EXPECT_THROW(block.validate(), ContractError);
}

TEST(Hybrid, RowsAreIndependent) {
  // Each sample's output depends on its own history only.
  Rng rng(5);
  auto block = nn::make_hybrid<double>({2, 4, 3, 1, 1}, "h", Init::uniform, rng);
  auto data = testing::random_tensor(rng, Shape{3, 5, 2});
  Graph<double> g1;
  const auto full = nn::hybrid_forward(g1, nn::constant_sequence(g1, data), block);
  Tensor<double> first(Shape{1, 5, 2}, std::vector<double>(data.values().begin(), data.values().begin() + 10));
  Graph<double> g2;
  const auto single = nn::hybrid_forward(g2, nn::constant_sequence(g2, first), block);
  for (std::size_t t = 0; t < 5; ++t)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(full[t].value()[j], single[t].value()[j], 1e-14);
}

TEST(Hybrid, GradientMatchesFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    Rng rng(100 + seed);
    auto block = nn::make_hybrid<double>({2, 3, 2, 2, 2}, "h", Init::uniform, rng);
    const auto data = testing::random_tensor(rng, Shape{2, 4, 2});
    std::vector<ad::Parameter<double>*> params;
    block.collect(params);
    const double worst = testing::gradient_check(params, [&](Graph<double>& g) {
      const auto out = nn::hybrid_forward(g, nn::constant_sequence(g, data), block);
      return ad::sum_all(ad::square(nn::stack_time(out)));
    });
    EXPECT_LE(worst, 1.0) << "seed " << seed;
  }
}

TEST(Bundle, RoleDimensions) {
  auto dims = nn::ModelDims::for_features(5);
  EXPECT_EQ(dims.noise_dim, 5u);
  Rng rng(1);
  nn::ModelBundle<float> b(dims, Init::uniform, rng);
  using nn::Role;
  EXPECT_EQ(b.network(Role::encoder).input_dim(), 5u);
  EXPECT_EQ(b.network(Role::encoder).output_dim(), dims.latent_dim);
  EXPECT_EQ(b.network(Role::decoder).output_dim(), 5u);
  EXPECT_EQ(b.network(Role::generator).input_dim(), dims.noise_dim);
  EXPECT_EQ(b.network(Role::supervisor).output_dim(), dims.latent_dim);
  EXPECT_EQ(b.network(Role::discriminator).output_dim(), 1u);
}

TEST(Bundle, ParameterNamesAreUniqueAndPrefixed) {
  Rng rng(1);
  nn::ModelBundle<float> b(nn::ModelDims::for_features(3), Init::uniform, rng);
  std::set<std::string> names;
  std::size_t count = 0;
  for (const auto* p : b.parameters()) {
    names.insert(p->name);
    count += p->value.size();
  }
  EXPECT_EQ(names.size(), b.parameters().size());
  EXPECT_EQ(count, b.parameter_count());
  for (nn::Role r : nn::kAllRoles) {
    for (const auto* p : b.parameters(r)) EXPECT_EQ(p->name.rfind(std::string(nn::role_name(r)), 0), 0u) << p->name;
  }
}

TEST(Bundle, RoleForwardEmitsProbabilities) {
  Rng rng(2);
  nn::ModelBundle<double> b(nn::ModelDims::for_features(2), Init::uniform, rng);
  Graph<double> g;
  const auto seq = nn::constant_sequence(g, testing::random_tensor(rng, Shape{3, 4, 2}, 0, 1));
  for (nn::Role r : {nn::Role::encoder, nn::Role::discriminator}) {
    for (const auto& v : nn::role_forward(g, r, seq, b)) {
      for (double x : v.value().values()) {
        EXPECT_GT(x, 0.0);
        EXPECT_LT(x, 1.0);
      }
    }
  }
}

TEST(Bundle, AssignValuesKeepsAddresses) {
  Rng rng(3);
  const auto dims = nn::ModelDims::for_features(2);
  nn::ModelBundle<float> a(dims, Init::uniform, rng), b(dims, Init::uniform, rng);
  const auto before = a.parameters();
  a.assign_values(b);
  const auto after = a.parameters();
  EXPECT_EQ(before, after);
  const auto pb = b.parameters();
  for (std::size_t i = 0; i < after.size(); ++i) EXPECT_EQ(after[i]->value, pb[i]->value);

  nn::ModelBundle<float> other(nn::ModelDims::for_features(3), Init::zero, rng);
  EXPECT_THROW(a.assign_values(other), ContractError);
}

TEST(Bundle, CastRoundTrip) {
  Rng rng(4);
  nn::ModelBundle<float> f(nn::ModelDims::for_features(2), Init::uniform, rng);
  const auto back = nn::cast_bundle<float>(nn::cast_bundle<double>(f));
  const auto pa = f.parameters();
  const auto pb = back.parameters();
  for (std::size_t i = 0; i < pa.size(); ++i) EXPECT_EQ(pa[i]->value, pb[i]->value);
}

}  // namespace
}  // namespace chronogan
