// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "chronogan/graph.hpp"
#include "chronogan/rng.hpp"

namespace chronogan::nn {

using ad::Graph;
using ad::Parameter;
using ad::Var;

/// One Var of shape (batch x width) per timestep.
template <typename Real>
using Sequence = std::vector<Var<Real>>;

enum class CellKind { gru, lstm };

/// How fresh parameters are filled.
enum class Init {
  zero,     ///< all zeros; used by tests with closed-form outputs
  uniform,  ///< U(-1/sqrt(fan_in), 1/sqrt(fan_in))
};

/// Per-gate weights of one recurrent cell.
///
/// Gate order: GRU {update, reset, candidate}; LSTM {input, forget, output, candidate}.
/// input_weights[g] is (input_dim x hidden_dim), recurrent_weights[g] is
/// (hidden_dim x hidden_dim), biases[g] is (hidden_dim).
template <typename Real>
struct CellParams {
  CellKind kind = CellKind::gru;
  std::size_t input_dim = 0;
  std::size_t hidden_dim = 0;
  std::vector<Parameter<Real>> input_weights;
  std::vector<Parameter<Real>> recurrent_weights;
  std::vector<Parameter<Real>> biases;

  std::size_t gate_count() const { return kind == CellKind::gru ? 3 : 4; }
  void collect(std::vector<Parameter<Real>*>& out);
};

template <typename Real>
CellParams<Real> make_cell(CellKind kind, std::size_t input_dim, std::size_t hidden_dim, const std::string& prefix,
                           Init init, Rng& rng);

/// Fully connected layer: y = x W + b with W of shape (in x out).
template <typename Real>
struct DenseParams {
  Parameter<Real> weight;
  Parameter<Real> bias;

  std::size_t input_dim() const { return weight.value.dim(0); }
  std::size_t output_dim() const { return weight.value.dim(1); }
};

template <typename Real>
DenseParams<Real> make_dense(std::size_t input_dim, std::size_t output_dim, const std::string& prefix, Init init,
                             Rng& rng);

/// Parallel GRU and LSTM stacks merged by a two-layer perceptron.
///
/// Invariants: both stacks non-empty; merge_hidden input width equals the
/// GRU top hidden size plus the LSTM top hidden size.
template <typename Real>
struct HybridBlockParams {
  std::vector<CellParams<Real>> gru_stack;
  std::vector<CellParams<Real>> lstm_stack;
  DenseParams<Real> merge_hidden;  ///< concat -> concat width, tanh
  DenseParams<Real> merge_out;     ///< concat width -> output_dim, linear

  std::size_t input_dim() const { return gru_stack.front().input_dim; }
  std::size_t output_dim() const { return merge_out.output_dim(); }
  void collect(std::vector<Parameter<Real>*>& out);
  /// Throws ContractError if the invariants above do not hold.
  void validate() const;
};

struct HybridShape {
  std::size_t input_dim = 1;
  std::size_t hidden_dim = 24;
  std::size_t output_dim = 1;
  std::size_t gru_layers = 2;
  std::size_t lstm_layers = 2;
};

template <typename Real>
HybridBlockParams<Real> make_hybrid(const HybridShape& shape, const std::string& prefix, Init init, Rng& rng);

/// Cell parameters bound into a graph once per forward pass; the per-gate
/// matrices are concatenated so each step needs one input and one
/// recurrent product.
template <typename Real>
struct BoundCell {
  CellKind kind = CellKind::gru;
  std::size_t hidden_dim = 0;
  Var<Real> input_weights;       ///< (in x G*H)
  Var<Real> bias;                ///< (G*H)
  Var<Real> recurrent_weights;   ///< GRU: update+reset (H x 2H); LSTM: all gates (H x 4H)
  Var<Real> candidate_recurrent; ///< GRU only: (H x H)
};

template <typename Real>
BoundCell<Real> bind(Graph<Real>& graph, CellParams<Real>& cell);

/// z = s(x Wz + h Uz + bz), r = s(x Wr + h Ur + br),
/// c = tanh(x Wc + (r * h) Uc + bc), h' = (1 - z) * h + z * c.
/// x is (N x in), h_prev is (N x H).
template <typename Real>
Var<Real> gru_step(Var<Real> x, Var<Real> h_prev, const BoundCell<Real>& cell);

/// c' = f * c + i * tanh(.), h' = o * tanh(c'). Returns (h', c').
template <typename Real>
std::pair<Var<Real>, Var<Real>> lstm_step(Var<Real> x, Var<Real> h_prev, Var<Real> c_prev,
                                          const BoundCell<Real>& cell);

/// Runs one cell over a whole sequence from zero initial state and returns
/// the hidden state at every step.
template <typename Real>
Sequence<Real> run_cell(Graph<Real>& graph, const Sequence<Real>& input, CellParams<Real>& cell);

/// y = x W + b.
template <typename Real>
Var<Real> dense(Graph<Real>& graph, Var<Real> x, DenseParams<Real>& layer);

/// GRU stack and LSTM stack over `input` independently, then per timestep
/// merge(concat(gru_top, lstm_top)). Output is linear (no squashing).
/// Throws ContractError for an empty sequence, ShapeError on width mismatch.
template <typename Real>
Sequence<Real> hybrid_forward(Graph<Real>& graph, const Sequence<Real>& input, HybridBlockParams<Real>& block);

/// Element-wise sigmoid of every step.
template <typename Real>
Sequence<Real> sigmoid(const Sequence<Real>& seq);

/// Shapes a (N x T x F) tensor into T constant steps of (N x F).
template <typename Real>
Sequence<Real> constant_sequence(Graph<Real>& graph, const ad::Tensor<Real>& ntf);

/// Packs steps back into a single (N x T x F) Var.
template <typename Real>
Var<Real> stack_time(const Sequence<Real>& seq);

/// Concatenates two sequences of equal length along the batch axis.
template <typename Real>
Sequence<Real> concat_batch(const Sequence<Real>& a, const Sequence<Real>& b);

}  // namespace chronogan::nn
