// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "chronogan/sequence_batch.hpp"

// 2-D views of real vs synthetic sets. Each sequence is reduced to its
// time-averaged F-vector before projecting.
namespace chronogan::eval {

enum class ProjectionMethod { pca, tsne };
enum class PointLabel { real, synthetic };

std::string_view method_name(ProjectionMethod m);
std::string_view label_name(PointLabel l);

using Point2 = std::array<double, 2>;

struct Projection2D {
  ProjectionMethod method = ProjectionMethod::pca;
  std::vector<Point2> points;
  std::vector<PointLabel> labels;

  // PCA only.
  std::array<double, 2> explained_variance_ratio{};
  // t-SNE only.
  double perplexity = 0.0;
  std::size_t iterations = 0;
  double final_kl = 0.0;
  std::vector<double> kl_history;  ///< KL after each iteration (exaggerated P during early exaggeration)
};

inline constexpr std::size_t kDefaultSampleCap = 1000;

/// Time-averaged vectors, (N x F) row-major.
std::vector<double> time_average(const data::SequenceBatch& batch);

/// PCA fit on the (capped) real side, applied to both sides. Both sides are
/// subsampled with the same seeded permutation, so equal inputs project to
/// equal clouds. ContractError with fewer than 3 samples per side;
/// DegenerateInput if the real covariance has rank < 2.
Projection2D pca_project(const data::SequenceBatch& real, const data::SequenceBatch& synth,
                         std::size_t sample_cap = kDefaultSampleCap, std::uint64_t seed = 0);

struct TsneOptions {
  double perplexity = 40.0;
  std::size_t iterations = 300;
  double learning_rate = 200.0;
  double early_exaggeration = 4.0;
  std::size_t exaggeration_iterations = 50;
  double initial_momentum = 0.5;
  double final_momentum = 0.8;
  /// 250 of a 1000-iteration schedule, scaled to 300 iterations.
  std::size_t momentum_switch = 75;
  std::uint64_t seed = 0;
  /// Starting layout; drawn from N(0, 1e-4 I) when absent.
  std::optional<std::vector<Point2>> initial;
};

struct TsneResult {
  std::vector<Point2> embedding;
  std::vector<double> kl_history;
};

/// Exact t-SNE of `rows` points of width `dim` (row-major).
/// ContractError if rows < 3 * perplexity.
TsneResult tsne_embed(const std::vector<double>& data, std::size_t rows, std::size_t dim, const TsneOptions& options);

/// Exact t-SNE on the combined time-averaged sets (real rows first).
Projection2D tsne_project(const data::SequenceBatch& real, const data::SequenceBatch& synth,
                          const TsneOptions& options = {}, std::size_t sample_cap = kDefaultSampleCap);

/// CSV with columns method,component1,component2,label.
void write_projection_csv(const Projection2D& projection, std::ostream& out);
void write_projection_csv(const Projection2D& projection, const std::filesystem::path& path);

}  // namespace chronogan::eval
