// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "chronogan/graph.hpp"

#include "chronogan/errors.hpp"

namespace chronogan::ad {

template <typename Real>
Var<Real> Graph<Real>::constant(Tensor<Real> value) {
  return record(std::move(value), {}, {}, "constant");
}

template <typename Real>
Var<Real> Graph<Real>::param(Parameter<Real>& p) {
  const bool tracked = !restricted_ || tracked_.contains(&p);
  if (!p.value.all_finite()) throw DomainError("parameter '" + p.name + "' holds non-finite values");
  Node node;
  node.value = p.value;
  node.param = tracked ? &p : nullptr;
  node.op = tracked ? "param" : "frozen_param";
  node.requires_grad = tracked;
  nodes_.push_back(std::move(node));
  return Var<Real>(this, nodes_.size() - 1);
}

template <typename Real>
void Graph<Real>::track_only(std::span<Parameter<Real>* const> params) {
  for (const Node& n : nodes_) {
    if (n.param != nullptr) throw ContractError("track_only() after parameters were bound");
  }
  restricted_ = true;
  tracked_.clear();
  tracked_.insert(params.begin(), params.end());
}

template <typename Real>
Var<Real> Graph<Real>::record(Tensor<Real> value, std::span<const std::size_t> inputs, BackwardFn fn,
                              std::string_view op) {
  if (!value.all_finite()) throw DomainError(std::string(op) + " produced a non-finite value");
  bool needs = false;
  for (std::size_t id : inputs) {
    if (id >= nodes_.size()) throw ContractError("node input refers to a later node");
    needs = needs || nodes_[id].requires_grad;
  }
  Node node;
  node.value = std::move(value);
  node.op = op;
  node.requires_grad = needs && static_cast<bool>(fn);
  if (node.requires_grad) node.backward = std::move(fn);
  nodes_.push_back(std::move(node));
  return Var<Real>(this, nodes_.size() - 1);
}

template <typename Real>
Tensor<Real>& Graph<Real>::grad(std::size_t id) {
  Node& n = nodes_[id];
  if (!n.has_grad) {
    n.grad = Tensor<Real>::zeros(n.value.shape());
    n.has_grad = true;
  }
  return n.grad;
}

template <typename Real>
void Graph<Real>::backward(Var<Real> loss) {
  if (loss.graph() != this) throw ContractError("loss belongs to a different graph");
  if (nodes_[loss.id()].value.size() != 1) {
    throw ContractError("backward() needs a scalar loss, got shape " + to_string(loss.shape()));
  }
  visits_ = 0;
  if (!nodes_[loss.id()].requires_grad) return;
  grad(loss.id()).fill(Real(1));
  for (std::size_t i = loss.id() + 1; i-- > 0;) {
    Node& n = nodes_[i];
    if (!n.requires_grad || !n.has_grad) continue;
    if (n.param != nullptr) {
      auto dst = n.param->grad.values();
      auto src = n.grad.values();
      for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
      continue;
    }
    ++visits_;
    n.backward(*this, i);
  }
}

template class Graph<float>;
template class Graph<double>;

}  // namespace chronogan::ad
