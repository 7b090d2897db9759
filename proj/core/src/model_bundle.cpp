// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "chronogan/model_bundle.hpp"

#include "chronogan/errors.hpp"

namespace chronogan::nn {

std::string_view role_name(Role role) {
  switch (role) {
    case Role::encoder: return "encoder";
    case Role::decoder: return "decoder";
    case Role::generator: return "generator";
    case Role::supervisor: return "supervisor";
    case Role::discriminator: return "discriminator";
  }
  return "unknown";
}

ModelDims ModelDims::for_features(std::size_t features) {
  ModelDims d;
  d.feature_dim = features;
  d.noise_dim = features;
  return d;
}

std::size_t ModelDims::input_dim(Role role) const {
  switch (role) {
    case Role::encoder: return feature_dim;
    case Role::decoder: return latent_dim;
    case Role::generator: return noise_dim;
    case Role::supervisor: return latent_dim;
    case Role::discriminator: return feature_dim;
  }
  return 0;
}

std::size_t ModelDims::output_dim(Role role) const {
  switch (role) {
    case Role::encoder: return latent_dim;
    case Role::decoder: return feature_dim;
    case Role::generator: return latent_dim;
    case Role::supervisor: return latent_dim;
    case Role::discriminator: return 1;
  }
  return 0;
}

template <typename Real>
ModelBundle<Real>::ModelBundle(const ModelDims& dims, Init init, Rng& rng) : dims_(dims) {
  if (dims.feature_dim == 0 || dims.latent_dim == 0 || dims.hidden_dim == 0 || dims.noise_dim == 0) {
    throw ContractError("model dimensions must be positive");
  }
  for (Role role : kAllRoles) {
    HybridShape shape;
    shape.input_dim = dims.input_dim(role);
    shape.output_dim = dims.output_dim(role);
    shape.hidden_dim = dims.hidden_dim;
    shape.gru_layers = dims.gru_layers;
    shape.lstm_layers = dims.lstm_layers;
    Rng stream = rng.split(static_cast<std::uint64_t>(role));
    nets_[static_cast<std::size_t>(role)] = make_hybrid<Real>(shape, std::string(role_name(role)), init, stream);
  }
}

template <typename Real>
HybridBlockParams<Real>& ModelBundle<Real>::network(Role role) {
  return nets_[static_cast<std::size_t>(role)];
}

template <typename Real>
const HybridBlockParams<Real>& ModelBundle<Real>::network(Role role) const {
  return nets_[static_cast<std::size_t>(role)];
}

template <typename Real>
std::vector<Parameter<Real>*> ModelBundle<Real>::parameters(Role role) {
  std::vector<Parameter<Real>*> out;
  network(role).collect(out);
  return out;
}

template <typename Real>
std::vector<Parameter<Real>*> ModelBundle<Real>::parameters() {
  std::vector<Parameter<Real>*> out;
  for (Role role : kAllRoles) network(role).collect(out);
  return out;
}

template <typename Real>
std::vector<const Parameter<Real>*> ModelBundle<Real>::parameters() const {
  auto mutable_params = const_cast<ModelBundle*>(this)->parameters();
  return {mutable_params.begin(), mutable_params.end()};
}

template <typename Real>
void ModelBundle<Real>::assign_values(const ModelBundle& other) {
  if (!(other.dims_ == dims_)) throw ContractError("assign_values across different architectures");
  auto dst = parameters();
  auto src = other.parameters();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    if (dst[i]->value.shape() != src[i]->value.shape()) throw ContractError("assign_values: shape mismatch");
    dst[i]->value = src[i]->value;
  }
}

template <typename Real>
std::size_t ModelBundle<Real>::parameter_count() const {
  std::size_t n = 0;
  for (const Parameter<Real>* p : parameters()) n += p->value.size();
  return n;
}

template <typename Real>
Sequence<Real> role_forward(Graph<Real>& graph, Role role, const Sequence<Real>& seq, ModelBundle<Real>& bundle) {
  if (seq.empty()) throw ContractError("role_forward: empty sequence");
  const std::size_t want = bundle.dims().input_dim(role);
  for (const Var<Real>& x : seq) {
    if (x.shape().size() != 2 || x.shape()[1] != want) {
      throw ShapeError(std::string(role_name(role)) + " expects width " + std::to_string(want) + ", got " +
                       ad::to_string(x.shape()));
    }
  }
  return sigmoid(hybrid_forward(graph, seq, bundle.network(role)));
}

template <typename To, typename From>
ModelBundle<To> cast_bundle(const ModelBundle<From>& from) {
  Rng unused(0);
  ModelBundle<To> out(from.dims(), Init::zero, unused);
  auto dst = out.parameters();
  auto src = from.parameters();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i]->value = ad::cast<To>(src[i]->value);
  return out;
}

template class ModelBundle<float>;
template class ModelBundle<double>;
template Sequence<float> role_forward(Graph<float>&, Role, const Sequence<float>&, ModelBundle<float>&);
template Sequence<double> role_forward(Graph<double>&, Role, const Sequence<double>&, ModelBundle<double>&);
template ModelBundle<double> cast_bundle(const ModelBundle<float>&);
template ModelBundle<float> cast_bundle(const ModelBundle<double>&);
template ModelBundle<float> cast_bundle(const ModelBundle<float>&);
template ModelBundle<double> cast_bundle(const ModelBundle<double>&);

}  // namespace chronogan::nn
