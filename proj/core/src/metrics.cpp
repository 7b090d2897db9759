// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "chronogan/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <set>
#include <thread>

#include "chronogan/errors.hpp"
#include "chronogan/rng.hpp"

namespace chronogan::eval {

ScoreReport ScoreReport::from_values(std::string metric, std::vector<double> values) {
  ScoreReport r;
  r.metric = std::move(metric);
  r.values = std::move(values);
  if (r.values.empty()) return r;
  double sum = 0.0;
  for (double v : r.values) sum += v;
  r.mean = sum / static_cast<double>(r.values.size());
  double sq = 0.0;
  for (double v : r.values) sq += (v - r.mean) * (v - r.mean);
  r.stddev = std::sqrt(sq / static_cast<double>(r.values.size()));
  return r;
}

std::string ScoreReport::formatted() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f ± %.2f", mean, stddev);
  return buf;
}

std::vector<std::uint64_t> replication_seeds(std::uint64_t root, std::size_t count) {
  Rng rng(root);
  std::vector<std::uint64_t> seeds(count);
  for (std::size_t i = 0; i < count; ++i) seeds[i] = rng.split(i).next_u64();
  return seeds;
}

ScoreReport replicate(const std::string& metric_name, const std::function<double(std::uint64_t)>& metric,
                      std::span<const std::uint64_t> seeds, std::size_t max_threads) {
  if (seeds.empty()) throw ContractError("replicate needs at least one seed");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    throw ContractError("replication seeds must be distinct");
  }
  std::size_t threads = max_threads != 0 ? max_threads : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, seeds.size());

  std::vector<double> values(seeds.size());
  std::vector<std::exception_ptr> errors(seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        values[i] = metric(seeds[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      std::throw_with_nested(ReplicationError(i, e.what()));
    } catch (...) {
      std::throw_with_nested(ReplicationError(i, "unknown error"));
    }
  }
  return ScoreReport::from_values(metric_name, std::move(values));
}

MomentGaps moment_gaps(const data::SequenceBatch& real, const data::SequenceBatch& synth) {
  if (real.steps() != synth.steps() || real.features() != synth.features()) {
    throw ContractError("moment gaps need matching sequence length and feature count");
  }
  if (real.empty() || synth.empty()) throw ContractError("moment gaps need non-empty sets");
  const std::size_t cells = real.steps() * real.features();

  auto moments = [cells](const data::SequenceBatch& b) {
    std::vector<double> mean(cells, 0.0), var(cells, 0.0);
    const auto v = b.values();
    const double n = static_cast<double>(b.samples());
    for (std::size_t i = 0; i < v.size(); ++i) mean[i % cells] += v[i];
    for (double& m : mean) m /= n;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double d = v[i] - mean[i % cells];
      var[i % cells] += d * d;
    }
    for (double& s : var) s /= n;
    return std::pair{mean, var};
  };
  const auto [rm, rv] = moments(real);
  const auto [sm, sv] = moments(synth);

  MomentGaps g;
  for (std::size_t c = 0; c < cells; ++c) {
    g.mse_mean += (rm[c] - sm[c]) * (rm[c] - sm[c]);
    g.mse_var += (rv[c] - sv[c]) * (rv[c] - sv[c]);
    g.mean_abs_gap += std::abs(rm[c] - sm[c]);
  }
  const double n = static_cast<double>(cells);
  g.mse_mean /= n;
  g.mse_var /= n;
  g.mean_abs_gap /= n;
  g.mse_std = std::sqrt(g.mse_var);
  return g;
}

}  // namespace chronogan::eval
