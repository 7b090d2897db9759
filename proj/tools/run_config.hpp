// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "chronogan/model_bundle.hpp"
#include "chronogan/trainer.hpp"

namespace chronogan::cli {

/// Bad or unknown configuration key. `key()` is the dotted path, e.g. "train.batch_size".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

struct DataConfig {
  std::string source = "sines";  ///< "sines" or "csv"
  std::string path;              ///< required when source is "csv"
  std::size_t steps = 24;        ///< "T"
  std::size_t stride = 1;
  std::size_t features = 5;      ///< sines only; CSV takes the column count
  std::size_t samples = 1000;    ///< "n"; sines only
};

struct ModelConfig {
  std::size_t hidden_dim = 24;
  std::size_t latent_dim = 24;
  std::optional<std::size_t> noise_dim;  ///< defaults to the feature count
  std::size_t gru_layers = 2;
  std::size_t lstm_layers = 2;

  nn::ModelDims dims(std::size_t features) const;
};

struct RunConfig {
  DataConfig data;
  ModelConfig model;
  train::TrainConfig train;
};

/// Parses JSON text. Omitted keys keep their defaults.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

/// Fully resolved configuration as JSON text (every key present).
std::string to_json(const RunConfig& config);

}  // namespace chronogan::cli
