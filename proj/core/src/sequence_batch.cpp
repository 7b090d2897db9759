// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "chronogan/sequence_batch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chronogan/errors.hpp"

namespace chronogan::data {

SequenceBatch::SequenceBatch(std::size_t samples, std::size_t steps, std::size_t features)
    : SequenceBatch(samples, steps, features, std::vector<double>(samples * steps * features, 0.0)) {}

SequenceBatch::SequenceBatch(std::size_t samples, std::size_t steps, std::size_t features, std::vector<double> values)
    : samples_(samples), steps_(steps), features_(features), values_(std::move(values)) {
  if (steps == 0 || features == 0) throw ContractError("sequence batches need T >= 1 and F >= 1");
  if (values_.size() != samples * steps * features) {
    throw ShapeError("sequence batch expects " + std::to_string(samples * steps * features) + " values, got " +
                     std::to_string(values_.size()));
  }
}

SequenceBatch SequenceBatch::subset(std::span<const std::size_t> indices) const {
  const std::size_t stride = steps_ * features_;
  std::vector<double> out;
  out.reserve(indices.size() * stride);
  for (std::size_t i : indices) {
    if (i >= samples_) throw ContractError("subset index out of range");
    out.insert(out.end(), values_.begin() + static_cast<std::ptrdiff_t>(i * stride),
               values_.begin() + static_cast<std::ptrdiff_t>((i + 1) * stride));
  }
  SequenceBatch b(indices.size(), steps_, features_, std::move(out));
  b.norm_ = norm_;
  b.provenance_ = provenance_;
  return b;
}

SequenceBatch SequenceBatch::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > samples_) throw ContractError("slice range out of bounds");
  std::vector<std::size_t> idx(end - begin);
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = begin + i;
  return subset(idx);
}

SequenceBatch SequenceBatch::shifted(double offset) const {
  SequenceBatch b = *this;
  for (double& v : b.values_) v += offset;
  b.norm_.reset();
  return b;
}

void SequenceBatch::validate() const {
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("sequence batch holds a non-finite value");
    if (norm_ && (v < 0.0 || v > 1.0)) throw DomainError("normalized sequence batch holds a value outside [0, 1]");
  }
}

template <typename Real>
ad::Tensor<Real> SequenceBatch::to_tensor() const {
  if (samples_ == 0) throw ContractError("cannot convert an empty batch to a tensor");
  std::vector<Real> data(values_.begin(), values_.end());
  return ad::Tensor<Real>(ad::Shape{samples_, steps_, features_}, std::move(data));
}

template <typename Real>
SequenceBatch SequenceBatch::from_tensor(const ad::Tensor<Real>& ntf) {
  if (ntf.rank() != 3) throw ShapeError("expected an (N x T x F) tensor, got " + ad::to_string(ntf.shape()));
  std::vector<double> data(ntf.values().begin(), ntf.values().end());
  return SequenceBatch(ntf.dim(0), ntf.dim(1), ntf.dim(2), std::move(data));
}

template ad::Tensor<float> SequenceBatch::to_tensor<float>() const;
template ad::Tensor<double> SequenceBatch::to_tensor<double>() const;
template SequenceBatch SequenceBatch::from_tensor<float>(const ad::Tensor<float>&);
template SequenceBatch SequenceBatch::from_tensor<double>(const ad::Tensor<double>&);

std::vector<FeatureRange> feature_ranges(const SequenceBatch& batch) {
  std::vector<FeatureRange> r(batch.features(),
                              {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()});
  const auto v = batch.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    FeatureRange& fr = r[i % batch.features()];
    fr.min = std::min(fr.min, v[i]);
    fr.max = std::max(fr.max, v[i]);
  }
  if (batch.empty()) std::fill(r.begin(), r.end(), FeatureRange{0.0, 0.0});
  return r;
}

SequenceBatch normalize_with(const SequenceBatch& batch, std::span<const FeatureRange> ranges) {
  if (ranges.size() != batch.features()) throw ShapeError("one range per feature required");
  SequenceBatch out = batch;
  auto v = out.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const FeatureRange& fr = ranges[i % batch.features()];
    v[i] = std::clamp((v[i] - fr.min) / (fr.max - fr.min + kNormGuard), 0.0, 1.0);
  }
  out.set_norm(std::vector<FeatureRange>(ranges.begin(), ranges.end()));
  return out;
}

SequenceBatch minmax_normalize(const SequenceBatch& batch) {
  if (batch.norm()) throw ContractError("batch is already normalized");
  const auto ranges = feature_ranges(batch);
  return normalize_with(batch, ranges);
}

SequenceBatch denormalize(const SequenceBatch& batch) {
  if (!batch.norm()) throw ContractError("batch carries no normalization record");
  const auto& ranges = *batch.norm();
  SequenceBatch out = batch;
  auto v = out.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const FeatureRange& fr = ranges[i % batch.features()];
    v[i] = v[i] * (fr.max - fr.min + kNormGuard) + fr.min;
  }
  out.set_norm(std::nullopt);
  return out;
}

}  // namespace chronogan::data
