// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "chronogan/recurrent.hpp"

#include <cmath>

#include "chronogan/errors.hpp"
#include "chronogan/ops.hpp"

namespace chronogan::nn {

using ad::Shape;
using ad::Tensor;

namespace {

constexpr const char* kGruGates[] = {"update", "reset", "candidate"};
constexpr const char* kLstmGates[] = {"input", "forget", "output", "candidate"};

template <typename Real>
Parameter<Real> make_param(const std::string& name, Shape shape, std::size_t fan_in, Init init, Rng& rng) {
  Tensor<Real> value(std::move(shape));
  if (init == Init::uniform) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (Real& v : value.values()) v = static_cast<Real>(rng.uniform(-bound, bound));
  }
  return Parameter<Real>(name, std::move(value));
}

template <typename Real>
void check_width(const Var<Real>& v, std::size_t rows, std::size_t cols, const char* what) {
  const Shape& s = v.shape();
  if (s.size() != 2 || s[1] != cols || (rows != 0 && s[0] != rows)) {
    throw ShapeError(std::string(what) + ": expected (N x " + std::to_string(cols) + "), got " + ad::to_string(s));
  }
}

}  // namespace

template <typename Real>
void CellParams<Real>::collect(std::vector<Parameter<Real>*>& out) {
  for (std::size_t g = 0; g < gate_count(); ++g) {
    out.push_back(&input_weights[g]);
    out.push_back(&recurrent_weights[g]);
    out.push_back(&biases[g]);
  }
}

template <typename Real>
CellParams<Real> make_cell(CellKind kind, std::size_t input_dim, std::size_t hidden_dim, const std::string& prefix,
                           Init init, Rng& rng) {
  if (input_dim == 0 || hidden_dim == 0) throw ContractError("cell dimensions must be positive");
  CellParams<Real> cell;
  cell.kind = kind;
  cell.input_dim = input_dim;
  cell.hidden_dim = hidden_dim;
  for (std::size_t g = 0; g < cell.gate_count(); ++g) {
    const std::string gate = kind == CellKind::gru ? kGruGates[g] : kLstmGates[g];
    cell.input_weights.push_back(
        make_param<Real>(prefix + "/W_" + gate, Shape{input_dim, hidden_dim}, input_dim, init, rng));
    cell.recurrent_weights.push_back(
        make_param<Real>(prefix + "/U_" + gate, Shape{hidden_dim, hidden_dim}, hidden_dim, init, rng));
    cell.biases.push_back(make_param<Real>(prefix + "/b_" + gate, Shape{hidden_dim}, hidden_dim, init, rng));
  }
  return cell;
}

template <typename Real>
DenseParams<Real> make_dense(std::size_t input_dim, std::size_t output_dim, const std::string& prefix, Init init,
                             Rng& rng) {
  if (input_dim == 0 || output_dim == 0) throw ContractError("dense dimensions must be positive");
  return DenseParams<Real>{make_param<Real>(prefix + "/W", Shape{input_dim, output_dim}, input_dim, init, rng),
                           make_param<Real>(prefix + "/b", Shape{output_dim}, input_dim, init, rng)};
}

template <typename Real>
void HybridBlockParams<Real>::collect(std::vector<Parameter<Real>*>& out) {
  for (auto& c : gru_stack) c.collect(out);
  for (auto& c : lstm_stack) c.collect(out);
  out.push_back(&merge_hidden.weight);
  out.push_back(&merge_hidden.bias);
  out.push_back(&merge_out.weight);
  out.push_back(&merge_out.bias);
}

template <typename Real>
void HybridBlockParams<Real>::validate() const {
  if (gru_stack.empty() || lstm_stack.empty()) throw ContractError("hybrid block needs non-empty GRU and LSTM stacks");
  if (merge_hidden.input_dim() != gru_stack.back().hidden_dim + lstm_stack.back().hidden_dim) {
    throw ContractError("merge perceptron width does not match the concatenated hidden states");
  }
  if (gru_stack.front().input_dim != lstm_stack.front().input_dim) {
    throw ContractError("GRU and LSTM stacks disagree on input width");
  }
}

template <typename Real>
HybridBlockParams<Real> make_hybrid(const HybridShape& shape, const std::string& prefix, Init init, Rng& rng) {
  if (shape.gru_layers == 0 || shape.lstm_layers == 0) throw ContractError("hybrid block needs at least one layer per stack");
  HybridBlockParams<Real> block;
  for (std::size_t l = 0; l < shape.gru_layers; ++l) {
    block.gru_stack.push_back(make_cell<Real>(CellKind::gru, l == 0 ? shape.input_dim : shape.hidden_dim,
                                              shape.hidden_dim, prefix + "/gru" + std::to_string(l), init, rng));
  }
  for (std::size_t l = 0; l < shape.lstm_layers; ++l) {
    block.lstm_stack.push_back(make_cell<Real>(CellKind::lstm, l == 0 ? shape.input_dim : shape.hidden_dim,
                                               shape.hidden_dim, prefix + "/lstm" + std::to_string(l), init, rng));
  }
  const std::size_t width = 2 * shape.hidden_dim;
  block.merge_hidden = make_dense<Real>(width, width, prefix + "/merge_hidden", init, rng);
  block.merge_out = make_dense<Real>(width, shape.output_dim, prefix + "/merge_out", init, rng);
  return block;
}

template <typename Real>
BoundCell<Real> bind(Graph<Real>& graph, CellParams<Real>& cell) {
  const std::size_t gates = cell.gate_count();
  Sequence<Real> w, u, b;
  for (std::size_t g = 0; g < gates; ++g) {
    w.push_back(graph.param(cell.input_weights[g]));
    u.push_back(graph.param(cell.recurrent_weights[g]));
    b.push_back(graph.param(cell.biases[g]));
  }
  BoundCell<Real> bound;
  bound.kind = cell.kind;
  bound.hidden_dim = cell.hidden_dim;
  bound.input_weights = ad::concat<Real>(w, 1);
  bound.bias = ad::concat<Real>(b, 0);
  if (cell.kind == CellKind::gru) {
    bound.recurrent_weights = ad::concat<Real>(std::span<const Var<Real>>(u.data(), 2), 1);
    bound.candidate_recurrent = u[2];
  } else {
    bound.recurrent_weights = ad::concat<Real>(u, 1);
  }
  return bound;
}

template <typename Real>
Var<Real> gru_step(Var<Real> x, Var<Real> h_prev, const BoundCell<Real>& cell) {
  if (cell.kind != CellKind::gru) throw ContractError("gru_step on a non-GRU cell");
  const std::size_t h = cell.hidden_dim;
  check_width(x, 0, cell.input_weights.shape()[0], "gru_step input");
  check_width(h_prev, x.shape()[0], h, "gru_step state");
  Var<Real> gx = ad::add(ad::matmul(x, cell.input_weights), cell.bias);
  Var<Real> gh = ad::matmul(h_prev, cell.recurrent_weights);
  Var<Real> zr = ad::sigmoid(ad::add(ad::slice(gx, 1, 0, 2 * h), gh));
  Var<Real> z = ad::slice(zr, 1, 0, h);
  Var<Real> r = ad::slice(zr, 1, h, 2 * h);
  Var<Real> candidate =
      ad::tanh(ad::add(ad::slice(gx, 1, 2 * h, 3 * h), ad::matmul(ad::mul(r, h_prev), cell.candidate_recurrent)));
  // (1 - z) * h + z * c == h + z * (c - h)
  return ad::add(h_prev, ad::mul(z, ad::sub(candidate, h_prev)));
}

template <typename Real>
std::pair<Var<Real>, Var<Real>> lstm_step(Var<Real> x, Var<Real> h_prev, Var<Real> c_prev,
                                          const BoundCell<Real>& cell) {
  if (cell.kind != CellKind::lstm) throw ContractError("lstm_step on a non-LSTM cell");
  const std::size_t h = cell.hidden_dim;
  check_width(x, 0, cell.input_weights.shape()[0], "lstm_step input");
  check_width(h_prev, x.shape()[0], h, "lstm_step state");
  check_width(c_prev, x.shape()[0], h, "lstm_step cell");
  Var<Real> gates =
      ad::add(ad::add(ad::matmul(x, cell.input_weights), cell.bias), ad::matmul(h_prev, cell.recurrent_weights));
  Var<Real> ifo = ad::sigmoid(ad::slice(gates, 1, 0, 3 * h));
  Var<Real> candidate = ad::tanh(ad::slice(gates, 1, 3 * h, 4 * h));
  Var<Real> in_gate = ad::slice(ifo, 1, 0, h);
  Var<Real> forget_gate = ad::slice(ifo, 1, h, 2 * h);
  Var<Real> out_gate = ad::slice(ifo, 1, 2 * h, 3 * h);
  Var<Real> c = ad::add(ad::mul(forget_gate, c_prev), ad::mul(in_gate, candidate));
  return {ad::mul(out_gate, ad::tanh(c)), c};
}

template <typename Real>
Sequence<Real> run_cell(Graph<Real>& graph, const Sequence<Real>& input, CellParams<Real>& cell) {
  if (input.empty()) throw ContractError("recurrent cell over an empty sequence");
  const std::size_t n = input.front().shape().at(0);
  BoundCell<Real> bound = bind(graph, cell);
  Var<Real> h = graph.constant(Tensor<Real>(Shape{n, cell.hidden_dim}));
  Var<Real> c = h;
  Sequence<Real> out;
  out.reserve(input.size());
  for (const Var<Real>& x : input) {
    if (cell.kind == CellKind::gru) {
      h = gru_step(x, h, bound);
    } else {
      std::tie(h, c) = lstm_step(x, h, c, bound);
    }
    out.push_back(h);
  }
  return out;
}

template <typename Real>
Var<Real> dense(Graph<Real>& graph, Var<Real> x, DenseParams<Real>& layer) {
  return ad::add(ad::matmul(x, graph.param(layer.weight)), graph.param(layer.bias));
}

template <typename Real>
Sequence<Real> hybrid_forward(Graph<Real>& graph, const Sequence<Real>& input, HybridBlockParams<Real>& block) {
  if (input.empty()) throw ContractError("hybrid_forward: empty sequence");
  block.validate();
  for (const Var<Real>& x : input) check_width(x, input.front().shape().at(0), block.input_dim(), "hybrid_forward");

  Sequence<Real> gru = input;
  for (auto& cell : block.gru_stack) gru = run_cell(graph, gru, cell);
  Sequence<Real> lstm = input;
  for (auto& cell : block.lstm_stack) lstm = run_cell(graph, lstm, cell);

  // The merge perceptron is applied to all steps at once: rows are stacked
  // time-major into a (T*N x 2H) matrix, then split back per step.
  const std::size_t n = input.front().shape()[0];
  const std::size_t steps = input.size();
  Sequence<Real> merged_in;
  merged_in.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    const Var<Real> pair[] = {gru[t], lstm[t]};
    merged_in.push_back(ad::concat<Real>(pair, 1));
  }
  Var<Real> rows = ad::concat<Real>(merged_in, 0);
  Var<Real> hidden = ad::tanh(dense(graph, rows, block.merge_hidden));
  Var<Real> out = dense(graph, hidden, block.merge_out);
  Sequence<Real> result;
  result.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) result.push_back(ad::slice(out, 0, t * n, (t + 1) * n));
  return result;
}

template <typename Real>
Sequence<Real> sigmoid(const Sequence<Real>& seq) {
  Sequence<Real> out;
  out.reserve(seq.size());
  for (const Var<Real>& v : seq) out.push_back(ad::sigmoid(v));
  return out;
}

template <typename Real>
Sequence<Real> constant_sequence(Graph<Real>& graph, const Tensor<Real>& ntf) {
  if (ntf.rank() != 3) throw ShapeError("constant_sequence expects (N x T x F), got " + ad::to_string(ntf.shape()));
  const std::size_t n = ntf.dim(0), steps = ntf.dim(1), f = ntf.dim(2);
  Sequence<Real> out;
  out.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    Tensor<Real> step(Shape{n, f});
    for (std::size_t i = 0; i < n; ++i) {
      std::copy_n(ntf.data() + (i * steps + t) * f, f, step.data() + i * f);
    }
    out.push_back(graph.constant(std::move(step)));
  }
  return out;
}

template <typename Real>
Var<Real> stack_time(const Sequence<Real>& seq) {
  if (seq.empty()) throw ContractError("stack_time of an empty sequence");
  return ad::stack<Real>(seq, 1);
}

template <typename Real>
Sequence<Real> concat_batch(const Sequence<Real>& a, const Sequence<Real>& b) {
  if (a.size() != b.size()) throw ShapeError("concat_batch: sequence lengths differ");
  Sequence<Real> out;
  out.reserve(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    const Var<Real> pair[] = {a[t], b[t]};
    out.push_back(ad::concat<Real>(pair, 0));
  }
  return out;
}

#define CHRONOGAN_INSTANTIATE_RECURRENT(Real)                                                                  \
  template struct CellParams<Real>;                                                                            \
  template struct HybridBlockParams<Real>;                                                                     \
  template CellParams<Real> make_cell(CellKind, std::size_t, std::size_t, const std::string&, Init, Rng&);     \
  template DenseParams<Real> make_dense(std::size_t, std::size_t, const std::string&, Init, Rng&);             \
  template HybridBlockParams<Real> make_hybrid(const HybridShape&, const std::string&, Init, Rng&);            \
  template BoundCell<Real> bind(Graph<Real>&, CellParams<Real>&);                                              \
  template Var<Real> gru_step(Var<Real>, Var<Real>, const BoundCell<Real>&);                                   \
  template std::pair<Var<Real>, Var<Real>> lstm_step(Var<Real>, Var<Real>, Var<Real>, const BoundCell<Real>&); \
  template Sequence<Real> run_cell(Graph<Real>&, const Sequence<Real>&, CellParams<Real>&);                    \
  template Var<Real> dense(Graph<Real>&, Var<Real>, DenseParams<Real>&);                                       \
  template Sequence<Real> hybrid_forward(Graph<Real>&, const Sequence<Real>&, HybridBlockParams<Real>&);       \
  template Sequence<Real> sigmoid(const Sequence<Real>&);                                                      \
  template Sequence<Real> constant_sequence(Graph<Real>&, const Tensor<Real>&);                                \
  template Var<Real> stack_time(const Sequence<Real>&);                                                        \
  template Sequence<Real> concat_batch(const Sequence<Real>&, const Sequence<Real>&);

CHRONOGAN_INSTANTIATE_RECURRENT(float)
CHRONOGAN_INSTANTIATE_RECURRENT(double)

#undef CHRONOGAN_INSTANTIATE_RECURRENT

}  // namespace chronogan::nn
