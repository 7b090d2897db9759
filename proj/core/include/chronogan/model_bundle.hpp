// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "chronogan/recurrent.hpp"

namespace chronogan::nn {

enum class Role { encoder, decoder, generator, supervisor, discriminator };

inline constexpr std::array<Role, 5> kAllRoles = {Role::encoder, Role::decoder, Role::generator, Role::supervisor,
                                                  Role::discriminator};

std::string_view role_name(Role role);

/// Architecture record shared by all five networks.
struct ModelDims {
  std::size_t feature_dim = 1;
  std::size_t latent_dim = 24;
  std::size_t hidden_dim = 24;
  std::size_t noise_dim = 1;
  std::size_t gru_layers = 2;
  std::size_t lstm_layers = 2;

  /// Defaults with noise_dim tied to the feature count.
  static ModelDims for_features(std::size_t features);

  std::size_t input_dim(Role role) const;
  std::size_t output_dim(Role role) const;

  friend bool operator==(const ModelDims&, const ModelDims&) = default;
};

/// Encoder e: F -> latent, decoder r: latent -> F, generator g: noise -> latent,
/// supervisor s: latent -> latent, discriminator d: F -> 1 per step.
template <typename Real>
class ModelBundle {
 public:
  ModelBundle() = default;
  ModelBundle(const ModelDims& dims, Init init, Rng& rng);

  const ModelDims& dims() const noexcept { return dims_; }
  HybridBlockParams<Real>& network(Role role);
  const HybridBlockParams<Real>& network(Role role) const;

  std::vector<Parameter<Real>*> parameters(Role role);
  std::vector<Parameter<Real>*> parameters();
  std::vector<const Parameter<Real>*> parameters() const;

  /// Copies parameter values from a bundle of identical architecture,
  /// leaving parameter addresses (and any optimizer bound to them) intact.
  void assign_values(const ModelBundle& other);

  std::size_t parameter_count() const;

 private:
  ModelDims dims_;
  std::array<HybridBlockParams<Real>, 5> nets_;
};

/// hybrid_forward with the role's parameters followed by a sigmoid head,
/// so every role emits values in (0, 1).
template <typename Real>
Sequence<Real> role_forward(Graph<Real>& graph, Role role, const Sequence<Real>& seq, ModelBundle<Real>& bundle);

/// Element-wise precision conversion of a whole bundle.
template <typename To, typename From>
ModelBundle<To> cast_bundle(const ModelBundle<From>& from);

extern template class ModelBundle<float>;
extern template class ModelBundle<double>;

}  // namespace chronogan::nn
