// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chronogan/tensor.hpp"

namespace chronogan::data {

/// Per-feature range used by min-max scaling.
struct FeatureRange {
  double min = 0.0;
  double max = 1.0;
  friend bool operator==(const FeatureRange&, const FeatureRange&) = default;
};

/// Guard added to (max - min) so constant features scale to 0.
inline constexpr double kNormGuard = 1e-8;

/// N samples x T timesteps x F features, sample-major.
///
/// When a normalization record is present every value lies in [0, 1].
/// A batch with N = 0 is a valid empty batch (e.g. zero generated samples).
class SequenceBatch {
 public:
  SequenceBatch() = default;
  SequenceBatch(std::size_t samples, std::size_t steps, std::size_t features);
  SequenceBatch(std::size_t samples, std::size_t steps, std::size_t features, std::vector<double> values);

  std::size_t samples() const noexcept { return samples_; }
  std::size_t steps() const noexcept { return steps_; }
  std::size_t features() const noexcept { return features_; }
  bool empty() const noexcept { return samples_ == 0; }

  double& at(std::size_t n, std::size_t t, std::size_t f) { return values_[(n * steps_ + t) * features_ + f]; }
  double at(std::size_t n, std::size_t t, std::size_t f) const { return values_[(n * steps_ + t) * features_ + f]; }
  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  const std::optional<std::vector<FeatureRange>>& norm() const noexcept { return norm_; }
  void set_norm(std::optional<std::vector<FeatureRange>> norm) { norm_ = std::move(norm); }

  const std::string& provenance() const noexcept { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

  /// Samples at `indices`, in that order. Keeps the normalization record.
  SequenceBatch subset(std::span<const std::size_t> indices) const;
  /// Samples [begin, end).
  SequenceBatch slice(std::size_t begin, std::size_t end) const;
  /// Same samples with every value shifted by `offset`; drops the normalization record.
  SequenceBatch shifted(double offset) const;

  /// Throws DomainError for non-finite values or, when normalized, values outside [0, 1].
  void validate() const;

  template <typename Real>
  ad::Tensor<Real> to_tensor() const;
  template <typename Real>
  static SequenceBatch from_tensor(const ad::Tensor<Real>& ntf);

  friend bool operator==(const SequenceBatch&, const SequenceBatch&) = default;

 private:
  std::size_t samples_ = 0;
  std::size_t steps_ = 0;
  std::size_t features_ = 0;
  std::vector<double> values_;
  std::optional<std::vector<FeatureRange>> norm_;
  std::string provenance_;
};

/// Per-feature min and max over every sample and timestep.
std::vector<FeatureRange> feature_ranges(const SequenceBatch& batch);

/// (x - min) / (max - min + guard) with ranges taken from the batch itself.
/// ContractError if the batch is already normalized.
SequenceBatch minmax_normalize(const SequenceBatch& batch);

/// Scales with externally supplied ranges and records them.
SequenceBatch normalize_with(const SequenceBatch& batch, std::span<const FeatureRange> ranges);

/// Inverse of minmax_normalize. ContractError if no record is present.
SequenceBatch denormalize(const SequenceBatch& batch);

extern template ad::Tensor<float> SequenceBatch::to_tensor<float>() const;
extern template ad::Tensor<double> SequenceBatch::to_tensor<double>() const;
extern template SequenceBatch SequenceBatch::from_tensor<float>(const ad::Tensor<float>&);
extern template SequenceBatch SequenceBatch::from_tensor<double>(const ad::Tensor<double>&);

}  // namespace chronogan::data
