// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "chronogan/tensor.hpp"

namespace chronogan::ad {

/// Trainable leaf: a named value with an additive gradient accumulator.
template <typename Real>
struct Parameter {
  Parameter() = default;
  Parameter(std::string name_, Tensor<Real> value_)
      : name(std::move(name_)), value(std::move(value_)), grad(Tensor<Real>::zeros(value.shape())) {}

  void zero_grad() { grad.fill(Real(0)); }

  std::string name;
  Tensor<Real> value;
  Tensor<Real> grad;
};

template <typename Real>
class Graph;

/// Handle to a node of a Graph. Cheap to copy; valid while the graph lives.
template <typename Real>
class Var {
 public:
  Var() = default;
  Var(Graph<Real>* graph, std::size_t id) : graph_(graph), id_(id) {}

  const Tensor<Real>& value() const;
  const Shape& shape() const { return value().shape(); }
  bool requires_grad() const;

  Graph<Real>* graph() const noexcept { return graph_; }
  std::size_t id() const noexcept { return id_; }
  explicit operator bool() const noexcept { return graph_ != nullptr; }

 private:
  Graph<Real>* graph_ = nullptr;
  std::size_t id_ = 0;
};

/// Define-by-run tape. Nodes are appended in evaluation order, so the node
/// vector is already a topological order and backward is a reverse sweep.
///
/// A graph is confined to one thread. Build a fresh one per forward pass.
template <typename Real>
class Graph {
 public:
  using BackwardFn = std::function<void(Graph&, std::size_t self)>;

  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  Var<Real> constant(Tensor<Real> value);

  /// Leaf bound to `p`. After backward(), d(loss)/d(p) is added into p.grad
  /// unless the graph has been restricted and `p` is not in the tracked set.
  Var<Real> param(Parameter<Real>& p);

  /// Restrict gradient flow to the given parameters; every other parameter
  /// binds as a constant. Must be called before any param() call.
  void track_only(std::span<Parameter<Real>* const> params);

  /// Reverse sweep from a single-element `loss`. Gradients accumulate
  /// additively into bound parameters.
  void backward(Var<Real> loss);

  /// Appends a node. Used by the operation library; `fn` may be empty for
  /// non-differentiable nodes. Throws DomainError if `value` is not finite.
  Var<Real> record(Tensor<Real> value, std::span<const std::size_t> inputs, BackwardFn fn,
                   std::string_view op);

  const Tensor<Real>& value(std::size_t id) const { return nodes_[id].value; }
  bool requires_grad(std::size_t id) const { return nodes_[id].requires_grad; }
  /// Gradient buffer of node `id`, zero-initialised on first access.
  Tensor<Real>& grad(std::size_t id);
  bool has_grad(std::size_t id) const { return nodes_[id].has_grad; }

  std::size_t size() const noexcept { return nodes_.size(); }
  std::string_view op_name(std::size_t id) const { return nodes_[id].op; }
  /// Number of backward closures run by the most recent backward().
  std::size_t last_backward_visits() const noexcept { return visits_; }

 private:
  struct Node {
    Tensor<Real> value;
    Tensor<Real> grad;
    BackwardFn backward;
    Parameter<Real>* param = nullptr;
    std::string_view op;
    bool requires_grad = false;
    bool has_grad = false;
  };

  std::vector<Node> nodes_;
  std::unordered_set<const Parameter<Real>*> tracked_;
  bool restricted_ = false;
  std::size_t visits_ = 0;
};

template <typename Real>
const Tensor<Real>& Var<Real>::value() const {
  return graph_->value(id_);
}

template <typename Real>
bool Var<Real>::requires_grad() const {
  return graph_->requires_grad(id_);
}

extern template class Graph<float>;
extern template class Graph<double>;

}  // namespace chronogan::ad
