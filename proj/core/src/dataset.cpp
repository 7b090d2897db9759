// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "chronogan/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "chronogan/errors.hpp"
#include "chronogan/rng.hpp"

namespace chronogan::data {

SequenceBatch generate_sines(std::size_t samples, std::size_t steps, std::size_t features, std::uint64_t seed,
                             bool normalize) {
  if (samples == 0 || steps == 0 || features == 0) throw ContractError("generate_sines needs n, T, F >= 1");
  Rng rng(seed);
  SequenceBatch batch(samples, steps, features);
  for (std::size_t n = 0; n < samples; ++n) {
    for (std::size_t f = 0; f < features; ++f) {
      const double eta = rng.uniform();
      const double theta = rng.uniform(-std::numbers::pi, std::numbers::pi);
      for (std::size_t t = 0; t < steps; ++t) {
        batch.at(n, t, f) = std::sin(2.0 * std::numbers::pi * eta * static_cast<double>(t) + theta);
      }
    }
  }
  batch.set_provenance("sines(seed=" + std::to_string(seed) + ")");
  if (!normalize) return batch;
  SequenceBatch out = minmax_normalize(batch);
  out.set_provenance(batch.provenance());
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

double parse_cell(std::string_view cell, std::size_t row, std::size_t column) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
    throw ParseError("non-numeric cell '" + std::string(cell) + "'", row, column);
  }
  return v;
}

}  // namespace

SequenceBatch load_csv_windows(std::istream& in, std::size_t steps, std::size_t stride, std::uint64_t seed) {
  if (steps == 0 || stride == 0) throw ContractError("window length and stride must be positive");
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header row", 1, 0);
  const std::size_t columns = split_commas(line).size();

  std::vector<double> table;
  std::size_t rows = 0;
  std::size_t row_number = 1;
  while (std::getline(in, line)) {
    ++row_number;
    if (trim(line).empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != columns) {
      throw ParseError("expected " + std::to_string(columns) + " cells, found " + std::to_string(cells.size()),
                       row_number, std::min(cells.size(), columns) + 1);
    }
    for (std::size_t c = 0; c < columns; ++c) table.push_back(parse_cell(cells[c], row_number, c + 1));
    ++rows;
  }
  if (rows < steps) {
    throw ContractError("file has " + std::to_string(rows) + " data rows; window length is " + std::to_string(steps));
  }

  // Normalizing the whole table first keeps window statistics comparable.
  const SequenceBatch whole = minmax_normalize(SequenceBatch(1, rows, columns, std::move(table)));

  const std::size_t windows = (rows - steps) / stride + 1;
  std::vector<double> values;
  values.reserve(windows * steps * columns);
  for (std::size_t w = 0; w < windows; ++w) {
    const auto first = whole.values().begin() + static_cast<std::ptrdiff_t>(w * stride * columns);
    values.insert(values.end(), first, first + static_cast<std::ptrdiff_t>(steps * columns));
  }
  SequenceBatch ordered(windows, steps, columns, std::move(values));
  ordered.set_norm(whole.norm());

  Rng rng(seed);
  const auto order = rng.permutation(windows);
  SequenceBatch out = ordered.subset(order);
  out.set_provenance("csv(T=" + std::to_string(steps) + ", stride=" + std::to_string(stride) + ")");
  return out;
}

SequenceBatch load_csv_windows(const std::filesystem::path& path, std::size_t steps, std::size_t stride,
                               std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open " + path.string());
  SequenceBatch out = load_csv_windows(in, steps, stride, seed);
  out.set_provenance(path.filename().string() + ":" + out.provenance());
  return out;
}

}  // namespace chronogan::data
