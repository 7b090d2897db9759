// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "chronogan/model_bundle.hpp"
#include "chronogan/sequence_batch.hpp"

// Binary layout, all integers u32 little-endian:
//
//   "CGN1" | version | tensor count
//   per tensor: name length | name bytes | rank | dims... | f32 LE values
//   metadata length | metadata JSON (dims, sequence length, norm record,
//                                    early-generation summary, config echo)
//   crc32 of every preceding byte
//
// Loading checks magic, version, every length against the remaining bytes,
// and the checksum, and reports any failure as FormatError.
namespace chronogan::data {

inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Early-generation bookkeeping carried alongside the weights.
struct EarlyGenSummary {
  std::optional<double> total_error;
  std::optional<double> p1;
  std::optional<double> p2;
  std::optional<long> best_epoch;
  friend bool operator==(const EarlyGenSummary&, const EarlyGenSummary&) = default;
};

struct CheckpointMeta {
  std::size_t sequence_length = 0;
  std::optional<std::vector<FeatureRange>> norm;
  EarlyGenSummary early_gen;
  /// Opaque JSON text echoing the run configuration; may be empty.
  std::string config_json;
};

struct Checkpoint {
  nn::ModelBundle<float> bundle;
  CheckpointMeta meta;
};

std::vector<std::uint8_t> encode_checkpoint(const nn::ModelBundle<float>& bundle, const CheckpointMeta& meta);
Checkpoint decode_checkpoint(const std::vector<std::uint8_t>& bytes);

void save_checkpoint(const std::filesystem::path& path, const nn::ModelBundle<float>& bundle,
                     const CheckpointMeta& meta);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace chronogan::data
