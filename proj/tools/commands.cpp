// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "commands.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "chronogan/checkpoint.hpp"
#include "chronogan/dataset.hpp"
#include "chronogan/errors.hpp"
#include "chronogan/metrics.hpp"
#include "chronogan/projection.hpp"
#include "chronogan/score_networks.hpp"
#include "chronogan/sequence_csv.hpp"
#include "chronogan/trainer.hpp"
#include "json.hpp"
#include "run_config.hpp"

namespace chronogan::cli {

namespace fs = std::filesystem;

namespace {

// Stream ids under the run seed. The trainer owns 101-103.
constexpr std::uint64_t kDataStream = 201;
constexpr std::uint64_t kInitStream = 202;
constexpr std::uint64_t kFallbackStream = 203;

struct TrainArgs {
  std::string config;
  std::string out;
};

struct GenerateArgs {
  std::string checkpoint;
  std::size_t num = 0;
  std::uint64_t seed = 0;
  std::string out;
};

struct EvaluateArgs {
  std::string real;
  std::string synthetic;
  std::size_t replications = 8;
  std::uint64_t seed = 0;
  std::optional<std::size_t> steps;
  std::string out;
};

struct ProjectArgs {
  std::string real;
  std::string synthetic;
  std::string method;
  std::uint64_t seed = 0;
  std::string out;
};

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw ContractError("cannot open " + path.string() + " for writing");
  return f;
}

data::SequenceBatch load_data(const RunConfig& cfg) {
  const std::uint64_t seed = Rng(cfg.train.seed).split(kDataStream).next_u64();
  if (cfg.data.source == "csv") return data::load_csv_windows(cfg.data.path, cfg.data.steps, cfg.data.stride, seed);
  return data::generate_sines(cfg.data.samples, cfg.data.steps, cfg.data.features, seed);
}

data::CheckpointMeta make_meta(const RunConfig& cfg, const data::SequenceBatch& real,
                               const train::EarlyGenState& state) {
  data::CheckpointMeta meta;
  meta.sequence_length = real.steps();
  meta.norm = real.norm();
  meta.early_gen = {state.total_error, state.p1, state.p2, state.best_epoch};
  meta.config_json = to_json(cfg);
  return meta;
}

void write_logs(const fs::path& dir, const std::vector<train::EpochLosses>& log, const train::EarlyGenState& state) {
  auto f = open_out(dir / "train_log.csv");
  train::write_train_log(log, f);
  auto g = open_out(dir / "early_gen_history.csv");
  train::write_early_gen_history(state, g);
}

int cmd_train(const TrainArgs& a, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = load_run_config(a.config);
  cfg.train.validate();

  const fs::path dir(a.out);
  fs::create_directories(dir);

  const data::SequenceBatch real = load_data(cfg);
  err << "data: " << real.provenance() << " (" << real.samples() << " x " << real.steps() << " x "
      << real.features() << ")\n";

  Rng init_rng = Rng(cfg.train.seed).split(kInitStream);
  nn::ModelBundle<float> bundle(cfg.model.dims(real.features()), nn::Init::uniform, init_rng);

  std::vector<train::EpochLosses> log;
  train::TrainHooks hooks;
  hooks.on_epoch = [&](const train::EpochLosses& e) {
    log.push_back(e);
    if (e.epoch % 100 == 0) {
      err << "phase " << e.phase << " epoch " << e.epoch;
      if (e.phase == 2) {
        err << " supervised " << e.supervised;
      } else {
        err << " d " << e.discriminator << " ae " << e.autoencoder;
        if (e.phase == 3) err << " g " << e.generator;
      }
      err << '\n';
    }
  };
  hooks.on_early_generation = [&](const train::EarlyGenRecord& r) {
    err << "early generation @" << r.epoch << ": dis " << r.metrics.dis << " pre " << r.metrics.pre << " score "
        << r.score << (r.saved ? " (saved)" : "") << '\n';
  };

  train::EarlyGenState state;
  train::Trainer trainer(cfg.train, real, bundle, hooks);
  try {
    trainer.run(state);
  } catch (const TrainingDiverged& e) {
    write_logs(dir, log, state);
    data::save_checkpoint(dir / "checkpoint_latest.cgn", bundle, make_meta(cfg, real, state));
    err << "error: " << e.what() << "\nlast healthy epoch: phase " << e.phase() << " epoch "
        << e.last_healthy_epoch() << '\n';
    return kExitDiverged;
  }

  const data::CheckpointMeta meta = make_meta(cfg, real, state);
  write_logs(dir, log, state);
  data::save_checkpoint(dir / "checkpoint_latest.cgn", bundle, meta);
  // Without any early-generation check the final model stands in as the best.
  data::save_checkpoint(dir / "checkpoint_best.cgn", state.best_checkpoint ? *state.best_checkpoint : bundle, meta);
  const data::SequenceBatch best =
      state.best_synthetic
          ? *state.best_synthetic
          : train::generate(bundle, real.samples(), real.steps(),
                            Rng(cfg.train.seed).split(kFallbackStream).next_u64());
  data::export_sequences_csv(best, dir / "synthetic_best.csv");
  data::export_sequences_csv(real, dir / "real_normalized.csv");

  out << "wrote " << (dir / "checkpoint_best.cgn").string();
  if (state.best_epoch) out << " (epoch " << *state.best_epoch << ", score " << *state.total_error << ")";
  out << '\n';
  return kExitOk;
}

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  data::Checkpoint ck = data::load_checkpoint(a.checkpoint);
  if (ck.meta.sequence_length == 0) throw FormatError("checkpoint has no sequence length");
  const data::SequenceBatch synth = train::generate(ck.bundle, a.num, ck.meta.sequence_length, a.seed);
  data::export_sequences_csv(synth, a.out);
  out << "wrote " << synth.samples() << " sequences to " << a.out << '\n';
  return kExitOk;
}

void check_layouts(const data::SequenceBatch& real, const data::SequenceBatch& synth) {
  if (real.steps() != synth.steps() || real.features() != synth.features()) {
    throw ContractError("real and synthetic layouts differ: T=" + std::to_string(real.steps()) +
                        ", F=" + std::to_string(real.features()) + " vs T=" + std::to_string(synth.steps()) +
                        ", F=" + std::to_string(synth.features()));
  }
}

nlohmann::json report_json(const eval::ScoreReport& r) {
  return {{"mean", r.mean}, {"std", r.stddev}, {"values", r.values}, {"formatted", r.formatted()}};
}

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  const data::SequenceBatch real = data::import_sequences_csv(a.real);
  const data::SequenceBatch synth = data::import_sequences_csv(a.synthetic);
  check_layouts(real, synth);

  eval::ScoreNetConfig budget;
  if (a.steps) budget.steps = *a.steps;
  const std::vector<std::uint64_t> seeds = eval::replication_seeds(a.seed, a.replications);

  err << "discriminative score, " << a.replications << " replications\n";
  const eval::ScoreReport dis = eval::replicate(
      "discriminative", [&](std::uint64_t s) { return eval::discriminative_score(real, synth, budget, s); }, seeds);
  err << "predictive score, " << a.replications << " replications\n";
  const eval::ScoreReport pre = eval::replicate(
      "predictive", [&](std::uint64_t s) { return eval::predictive_score(real, synth, budget, s); }, seeds);
  // The moment gaps do not depend on the seed; they are repeated so all four blocks share a shape.
  const eval::MomentGaps gaps = eval::moment_gaps(real, synth);
  const auto mse_mean = eval::ScoreReport::from_values("mseMean", std::vector<double>(a.replications, gaps.mse_mean));
  const auto mse_std = eval::ScoreReport::from_values("mseSTD", std::vector<double>(a.replications, gaps.mse_std));

  nlohmann::json j;
  j["replications"] = a.replications;
  j["seed"] = a.seed;
  j["discriminative"] = report_json(dis);
  j["predictive"] = report_json(pre);
  j["mseMean"] = report_json(mse_mean);
  j["mseSTD"] = report_json(mse_std);
  auto f = open_out(a.out);
  f << j.dump(2) << '\n';
  out << "discriminative " << dis.formatted() << "\npredictive " << pre.formatted() << "\nmseMean "
      << mse_mean.formatted() << "\nmseSTD " << mse_std.formatted() << '\n';
  return kExitOk;
}

int cmd_project(const ProjectArgs& a, std::ostream& out) {
  const data::SequenceBatch real = data::import_sequences_csv(a.real);
  const data::SequenceBatch synth = data::import_sequences_csv(a.synthetic);
  check_layouts(real, synth);

  eval::Projection2D p;
  if (a.method == "pca") {
    p = eval::pca_project(real, synth, eval::kDefaultSampleCap, a.seed);
  } else {
    eval::TsneOptions opt;
    opt.seed = a.seed;
    p = eval::tsne_project(real, synth, opt);
  }
  eval::write_projection_csv(p, a.out);
  out << "wrote " << p.points.size() << " points to " << a.out;
  if (p.method == eval::ProjectionMethod::tsne) out << " (final KL " << p.final_kl << ")";
  out << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("ChronoGAN time-series generator", "chronogan");
  app.require_subcommand(1);

  TrainArgs train_args;
  auto* train = app.add_subcommand("train", "Run the three training phases");
  train->add_option("--config", train_args.config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
  train->add_option("--out", train_args.out, "Output directory")->required();

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "Sample sequences from a checkpoint");
  gen->add_option("--checkpoint", gen_args.checkpoint, "Checkpoint file")->required();
  gen->add_option("--num", gen_args.num, "Number of sequences")->required();
  gen->add_option("--seed", gen_args.seed, "Noise seed")->required();
  gen->add_option("--out", gen_args.out, "Output sequence CSV")->required();

  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "Score synthetic sequences against real ones");
  evaluate->add_option("--real", eval_args.real, "Real sequence CSV")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--synthetic", eval_args.synthetic, "Synthetic sequence CSV")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--replications", eval_args.replications, "Replication count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--seed", eval_args.seed, "Root seed for the replications")->capture_default_str();
  evaluate->add_option("--steps", eval_args.steps, "Training steps per score network (default 2000)")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--out", eval_args.out, "Report file (JSON)")->required();

  ProjectArgs proj_args;
  auto* project = app.add_subcommand("project", "2-D projection of real and synthetic sequences");
  project->add_option("--real", proj_args.real, "Real sequence CSV")->required()->check(CLI::ExistingFile);
  project->add_option("--synthetic", proj_args.synthetic, "Synthetic sequence CSV")
      ->required()
      ->check(CLI::ExistingFile);
  project->add_option("--method", proj_args.method, "pca or tsne")
      ->required()
      ->check(CLI::IsMember({"pca", "tsne"}));
  project->add_option("--seed", proj_args.seed, "Subsampling and layout seed")->capture_default_str();
  project->add_option("--out", proj_args.out, "Projection CSV")->required();

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    const CLI::App* failed = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << failed->help();
    return kExitUsage;
  }

  try {
    if (*train) return cmd_train(train_args, out, err);
    if (*gen) return cmd_generate(gen_args, out);
    if (*evaluate) return cmd_evaluate(eval_args, out, err);
    return cmd_project(proj_args, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
  } catch (const DegenerateInput& e) {
    err << "degenerate input: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace chronogan::cli
