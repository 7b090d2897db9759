// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "run_config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"

namespace chronogan::cli {

using nlohmann::json;

nn::ModelDims ModelConfig::dims(std::size_t features) const {
  nn::ModelDims d;
  d.feature_dim = features;
  d.hidden_dim = hidden_dim;
  d.latent_dim = latent_dim;
  d.noise_dim = noise_dim.value_or(features);
  d.gru_layers = gru_layers;
  d.lstm_layers = lstm_layers;
  return d;
}

namespace {

// Field setters for one section, keyed by JSON name.
using Setter = std::function<void(const json&, const std::string& key)>;

template <typename T>
T as(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(key, "wrong type (got " + std::string(v.type_name()) + ")");
  }
}

std::size_t as_count(const json& v, const std::string& key, std::size_t min = 1) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) throw ConfigError(key, "expected an integer");
  const auto x = v.get<long long>();
  if (x < static_cast<long long>(min)) throw ConfigError(key, "must be at least " + std::to_string(min));
  return static_cast<std::size_t>(x);
}

long as_epochs(const json& v, const std::string& key) {
  return static_cast<long>(as_count(v, key, 0));
}

double as_weight(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  const double x = v.get<double>();
  if (!(x >= 0.0)) throw ConfigError(key, "must be nonnegative");
  return x;
}

void apply_section(const json& section, const std::string& name, const std::map<std::string, Setter>& fields) {
  if (!section.is_object()) throw ConfigError(name, "expected an object");
  for (const auto& [key, value] : section.items()) {
    const std::string path = name + "." + key;
    auto it = fields.find(key);
    if (it == fields.end()) throw ConfigError(path, "unknown key");
    it->second(value, path);
  }
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("", "top level must be an object");

  RunConfig c;
  DataConfig& d = c.data;
  ModelConfig& m = c.model;
  train::TrainConfig& t = c.train;
  loss::LossWeights& w = t.weights;

  const std::map<std::string, Setter> data_fields = {
      {"source",
       [&](const json& v, const std::string& k) {
         d.source = as<std::string>(v, k);
         if (d.source != "sines" && d.source != "csv") throw ConfigError(k, "must be \"sines\" or \"csv\"");
       }},
      {"path", [&](const json& v, const std::string& k) { d.path = as<std::string>(v, k); }},
      {"T", [&](const json& v, const std::string& k) { d.steps = as_count(v, k); }},
      {"stride", [&](const json& v, const std::string& k) { d.stride = as_count(v, k); }},
      {"features", [&](const json& v, const std::string& k) { d.features = as_count(v, k); }},
      {"n", [&](const json& v, const std::string& k) { d.samples = as_count(v, k); }},
  };
  const std::map<std::string, Setter> model_fields = {
      {"hidden_dim", [&](const json& v, const std::string& k) { m.hidden_dim = as_count(v, k); }},
      {"latent_dim", [&](const json& v, const std::string& k) { m.latent_dim = as_count(v, k); }},
      {"noise_dim", [&](const json& v, const std::string& k) { m.noise_dim = as_count(v, k); }},
      {"gru_layers", [&](const json& v, const std::string& k) { m.gru_layers = as_count(v, k); }},
      {"lstm_layers", [&](const json& v, const std::string& k) { m.lstm_layers = as_count(v, k); }},
  };
  const std::map<std::string, Setter> train_fields = {
      {"epochs_phase1", [&](const json& v, const std::string& k) { t.epochs_phase1 = as_epochs(v, k); }},
      {"epochs_phase2", [&](const json& v, const std::string& k) { t.epochs_phase2 = as_epochs(v, k); }},
      {"epochs_phase3", [&](const json& v, const std::string& k) { t.epochs_phase3 = as_epochs(v, k); }},
      {"batch_size", [&](const json& v, const std::string& k) { t.batch_size = as_count(v, k); }},
      {"learning_rate",
       [&](const json& v, const std::string& k) {
         if (!v.is_number() || !(v.get<double>() > 0.0)) throw ConfigError(k, "must be a positive number");
         t.learning_rate = v.get<double>();
       }},
      {"check_epoch", [&](const json& v, const std::string& k) { t.check_epoch = static_cast<long>(as_count(v, k)); }},
      {"eval_budget_steps", [&](const json& v, const std::string& k) { t.eval_budget_steps = as_count(v, k); }},
      {"seed", [&](const json& v, const std::string& k) { t.seed = static_cast<std::uint64_t>(as_count(v, k, 0)); }},
  };
  const std::map<std::string, Setter> loss_fields = {
      {"recon_phase1", [&](const json& v, const std::string& k) { w.recon_phase1 = as_weight(v, k); }},
      {"recon_phase3", [&](const json& v, const std::string& k) { w.recon_phase3 = as_weight(v, k); }},
      {"adv_ae_phase1", [&](const json& v, const std::string& k) { w.adv_ae_phase1 = as_weight(v, k); }},
      {"adv_ae_phase3", [&](const json& v, const std::string& k) { w.adv_ae_phase3 = as_weight(v, k); }},
      {"adv_g", [&](const json& v, const std::string& k) { w.adv_g = as_weight(v, k); }},
      {"supervised", [&](const json& v, const std::string& k) { w.supervised = as_weight(v, k); }},
      {"moment", [&](const json& v, const std::string& k) { w.moment = as_weight(v, k); }},
      {"ts", [&](const json& v, const std::string& k) { w.ts = as_weight(v, k); }},
      {"ts_weights",
       [&](const json& v, const std::string& k) {
         const auto s = as<std::string>(v, k);
         if (s == "linear") {
           t.ts_weights = loss::TimeWeights::linear;
         } else if (s == "uniform") {
           t.ts_weights = loss::TimeWeights::uniform;
         } else {
           throw ConfigError(k, "must be \"linear\" or \"uniform\"");
         }
       }},
  };

  const std::map<std::string, std::function<void(const json&)>> sections = {
      {"data", [&](const json& s) { apply_section(s, "data", data_fields); }},
      {"model", [&](const json& s) { apply_section(s, "model", model_fields); }},
      {"train", [&](const json& s) { apply_section(s, "train", train_fields); }},
      {"losses", [&](const json& s) { apply_section(s, "losses", loss_fields); }},
  };
  for (const auto& [key, value] : root.items()) {
    auto it = sections.find(key);
    if (it == sections.end()) throw ConfigError(key, "unknown key");
    it->second(value);
  }

  if (d.source == "csv" && d.path.empty()) throw ConfigError("data.path", "required when data.source is \"csv\"");
  try {
    w.validate();
  } catch (const std::logic_error& e) {
    throw ConfigError("losses", e.what());
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str());
}

std::string to_json(const RunConfig& c) {
  const loss::LossWeights& w = c.train.weights;
  json j;
  j["data"] = {{"source", c.data.source},     {"path", c.data.path},         {"T", c.data.steps},
               {"stride", c.data.stride},     {"features", c.data.features}, {"n", c.data.samples}};
  j["model"] = {{"hidden_dim", c.model.hidden_dim},
                {"latent_dim", c.model.latent_dim},
                {"noise_dim", c.model.noise_dim ? json(*c.model.noise_dim) : json(nullptr)},
                {"gru_layers", c.model.gru_layers},
                {"lstm_layers", c.model.lstm_layers}};
  j["train"] = {{"epochs_phase1", c.train.epochs_phase1},
                {"epochs_phase2", c.train.epochs_phase2},
                {"epochs_phase3", c.train.epochs_phase3},
                {"batch_size", c.train.batch_size},
                {"learning_rate", c.train.learning_rate},
                {"check_epoch", c.train.check_epoch},
                {"eval_budget_steps", c.train.eval_budget_steps},
                {"seed", c.train.seed}};
  j["losses"] = {{"recon_phase1", w.recon_phase1},   {"recon_phase3", w.recon_phase3},
                 {"adv_ae_phase1", w.adv_ae_phase1}, {"adv_ae_phase3", w.adv_ae_phase3},
                 {"adv_g", w.adv_g},                 {"supervised", w.supervised},
                 {"moment", w.moment},               {"ts", w.ts},
                 {"ts_weights", c.train.ts_weights == loss::TimeWeights::linear ? "linear" : "uniform"}};
  return j.dump();
}

}  // namespace chronogan::cli
