// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "chronogan/dataset.hpp"
#include "chronogan/sequence_csv.hpp"
#include "commands.hpp"
#include "json.hpp"
#include "run_config.hpp"

namespace chronogan::cli {
namespace {

namespace fs = std::filesystem;

std::string key_of(const std::string& text) {
  try {
    parse_run_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<accepted>";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Workdir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("chronogan_cli_test_" +
                                        std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int call(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  fs::path write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return dir_ / name;
  }

  fs::path write_sines(const std::string& name, std::size_t n, std::uint64_t seed) {
    data::export_sequences_csv(data::generate_sines(n, 6, 2, seed), dir_ / name);
    return dir_ / name;
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

constexpr const char* kTinyConfig = R"({
  "data": {"source": "sines", "n": 24, "T": 5, "features": 2},
  "model": {"hidden_dim": 3, "latent_dim": 2, "gru_layers": 1, "lstm_layers": 1},
  "train": {"epochs_phase1": 2, "epochs_phase2": 2, "epochs_phase3": 4, "batch_size": 8,
            "check_epoch": 2, "eval_budget_steps": 3, "seed": 4}
})";

TEST(RunConfig, DefaultsWhenSectionsAreAbsent) {
  const auto c = parse_run_config("{}");
  EXPECT_EQ(c.data.source, "sines");
  EXPECT_EQ(c.data.steps, 24u);
  EXPECT_EQ(c.data.samples, 1000u);
  EXPECT_EQ(c.model.hidden_dim, 24u);
  EXPECT_FALSE(c.model.noise_dim.has_value());
  EXPECT_EQ(c.model.dims(5).noise_dim, 5u);
  EXPECT_EQ(c.train.batch_size, train::TrainConfig{}.batch_size);
}

TEST(RunConfig, ReadsEveryField) {
  const auto c = parse_run_config(R"({"data": {"source": "csv", "path": "x.csv", "T": 10, "stride": 2},
    "model": {"noise_dim": 3, "lstm_layers": 1},
    "train": {"learning_rate": 0.01, "seed": 7},
    "losses": {"ts_weights": "uniform", "moment": 50}})");
  EXPECT_EQ(c.data.path, "x.csv");
  EXPECT_EQ(c.data.steps, 10u);
  EXPECT_EQ(c.data.stride, 2u);
  EXPECT_EQ(c.model.dims(4).noise_dim, 3u);
  EXPECT_EQ(c.model.lstm_layers, 1u);
  EXPECT_DOUBLE_EQ(c.train.learning_rate, 0.01);
  EXPECT_EQ(c.train.seed, 7u);
  EXPECT_EQ(c.train.ts_weights, loss::TimeWeights::uniform);
}

TEST(RunConfig, ErrorsNameTheOffendingKey) {
  EXPECT_EQ(key_of(R"({"train": {"bogus": 1}})"), "train.bogus");
  EXPECT_EQ(key_of(R"({"trian": {}})"), "trian");
  EXPECT_EQ(key_of(R"({"train": {"batch_size": "big"}})"), "train.batch_size");
  EXPECT_EQ(key_of(R"({"train": {"batch_size": 0}})"), "train.batch_size");
  EXPECT_EQ(key_of(R"({"train": {"learning_rate": -1}})"), "train.learning_rate");
  EXPECT_EQ(key_of(R"({"data": {"source": "parquet"}})"), "data.source");
  EXPECT_EQ(key_of(R"({"data": {"source": "csv"}})"), "data.path");
  EXPECT_EQ(key_of(R"({"losses": {"ts_weights": "cubic"}})"), "losses.ts_weights");
  EXPECT_EQ(key_of("[1, 2]"), "");
  EXPECT_EQ(key_of("{not json"), "");
}

TEST(RunConfig, SerializedFormIsJson) {
  auto c = parse_run_config(kTinyConfig);
  c.model.noise_dim = 2;
  const auto j = nlohmann::json::parse(to_json(c));
  EXPECT_EQ(j["data"]["T"], 5);
  EXPECT_EQ(j["model"]["noise_dim"], 2);
  EXPECT_EQ(j["train"]["seed"], 4);
  EXPECT_EQ(j["losses"]["ts_weights"], "linear");
}

TEST_F(Workdir, UsageErrors) {
  EXPECT_EQ(call({"chronogan"}), kExitUsage);
  EXPECT_EQ(call({"chronogan", "train", "--out", (dir_ / "o").string()}), kExitUsage);
  EXPECT_NE(err_.str().find("--config"), std::string::npos);
  const auto real = write_sines("real.csv", 10, 1);
  EXPECT_EQ(call({"chronogan", "project", "--real", real.string(), "--synthetic", real.string(), "--method", "umap",
                  "--out", (dir_ / "p.csv").string()}),
            kExitUsage);
  EXPECT_EQ(call({"chronogan", "--help"}), kExitOk);
}

TEST_F(Workdir, BadConfigIsReported) {
  const auto cfg = write("bad.json", R"({"train": {"bogus": 1}})");
  EXPECT_EQ(call({"chronogan", "train", "--config", cfg.string(), "--out", (dir_ / "o").string()}), kExitUsage);
  EXPECT_NE(err_.str().find("train.bogus"), std::string::npos);
}

TEST_F(Workdir, TrainGenerateEvaluateProject) {
  const auto cfg = write("tiny.json", kTinyConfig);
  const auto run_dir = dir_ / "run";
  ASSERT_EQ(call({"chronogan", "train", "--config", cfg.string(), "--out", run_dir.string()}), kExitOk) << err_.str();
  for (const char* f : {"train_log.csv", "early_gen_history.csv", "checkpoint_latest.cgn", "checkpoint_best.cgn",
                        "synthetic_best.csv", "real_normalized.csv"})
    EXPECT_TRUE(fs::exists(run_dir / f)) << f;

  // Same config, same bytes.
  const auto again = dir_ / "again";
  ASSERT_EQ(call({"chronogan", "train", "--config", cfg.string(), "--out", again.string()}), kExitOk);
  for (const char* f : {"train_log.csv", "checkpoint_latest.cgn", "synthetic_best.csv"})
    EXPECT_EQ(slurp(run_dir / f), slurp(again / f)) << f;

  const auto gen = dir_ / "gen.csv";
  ASSERT_EQ(call({"chronogan", "generate", "--checkpoint", (run_dir / "checkpoint_best.cgn").string(), "--num", "12",
                  "--seed", "3", "--out", gen.string()}),
            kExitOk)
      << err_.str();
  const auto g = data::import_sequences_csv(gen);
  EXPECT_EQ(g.samples(), 12u);
  EXPECT_EQ(g.steps(), 5u);
  EXPECT_EQ(g.features(), 2u);

  const auto none = dir_ / "none.csv";
  ASSERT_EQ(call({"chronogan", "generate", "--checkpoint", (run_dir / "checkpoint_best.cgn").string(), "--num", "0",
                  "--seed", "3", "--out", none.string()}),
            kExitOk);
  EXPECT_EQ(slurp(none), "sample_id,timestep,f0,f1\n");

  const auto report = dir_ / "report.json";
  ASSERT_EQ(call({"chronogan", "evaluate", "--real", (run_dir / "real_normalized.csv").string(), "--synthetic",
                  gen.string(), "--replications", "1", "--steps", "20", "--out", report.string()}),
            kExitOk)
      << err_.str();
  const auto j = nlohmann::json::parse(slurp(report));
  for (const char* block : {"discriminative", "predictive", "mseMean", "mseSTD"}) {
    ASSERT_TRUE(j.contains(block)) << block;
    EXPECT_EQ(j[block]["values"].size(), 1u);
    EXPECT_EQ(j[block]["std"], 0.0);
  }

  const auto proj = dir_ / "proj.csv";
  ASSERT_EQ(call({"chronogan", "project", "--real", (run_dir / "real_normalized.csv").string(), "--synthetic",
                  gen.string(), "--method", "pca", "--out", proj.string()}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(slurp(proj).substr(0, slurp(proj).find('\n')), "method,component1,component2,label");
}

TEST_F(Workdir, CorruptCheckpointIsAnError) {
  const auto ck = write("broken.cgn", "CGN1 not really");
  EXPECT_EQ(call({"chronogan", "generate", "--checkpoint", ck.string(), "--num", "2", "--seed", "1", "--out",
                  (dir_ / "g.csv").string()}),
            kExitUsage);
  EXPECT_FALSE(err_.str().empty());
}

TEST_F(Workdir, MismatchedLayoutsAreRejected) {
  const auto real = write_sines("real.csv", 10, 1);
  data::export_sequences_csv(data::generate_sines(10, 7, 2, 2), dir_ / "other.csv");
  EXPECT_EQ(call({"chronogan", "evaluate", "--real", real.string(), "--synthetic", (dir_ / "other.csv").string(),
                  "--out", (dir_ / "r.json").string()}),
            kExitUsage);
}

}  // namespace
}  // namespace chronogan::cli
