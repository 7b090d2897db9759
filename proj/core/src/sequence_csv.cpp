// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "chronogan/sequence_csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "chronogan/errors.hpp"

namespace chronogan::data {

namespace {

void write_number(std::ostream& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, res.ptr - buf);
}

std::vector<std::string_view> split(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
T parse(std::string_view cell, std::size_t row, std::size_t column) {
  T v{};
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ParseError("malformed cell '" + std::string(cell) + "'", row, column);
  }
  return v;
}

}  // namespace

void export_sequences_csv(const SequenceBatch& batch, std::ostream& out) {
  out << "sample_id,timestep";
  for (std::size_t f = 0; f < batch.features(); ++f) out << ",f" << f;
  out << '\n';
  for (std::size_t n = 0; n < batch.samples(); ++n) {
    for (std::size_t t = 0; t < batch.steps(); ++t) {
      out << n << ',' << t;
      for (std::size_t f = 0; f < batch.features(); ++f) {
        out << ',';
        write_number(out, batch.at(n, t, f));
      }
      out << '\n';
    }
  }
}

void export_sequences_csv(const SequenceBatch& batch, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ContractError("cannot write " + path.string());
  export_sequences_csv(batch, out);
  if (!out) throw ContractError("write failed for " + path.string());
}

SequenceBatch import_sequences_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header row", 1, 0);
  const auto header = split(line);
  if (header.size() < 3 || header[0] != "sample_id" || header[1] != "timestep") {
    throw ParseError("header must start with sample_id,timestep and name at least one feature", 1, 1);
  }
  for (std::size_t c = 2; c < header.size(); ++c) {
    if (header[c] != "f" + std::to_string(c - 2)) throw ParseError("unexpected feature column name", 1, c + 1);
  }
  const std::size_t features = header.size() - 2;

  std::vector<double> values;
  std::size_t samples = 0;
  std::size_t steps = 0;  // fixed once the first sample closes
  std::size_t cur_step = 0;
  auto close_sample = [&](std::size_t row) {
    if (steps == 0) {
      steps = cur_step;
    } else if (cur_step != steps) {
      throw ParseError("sample " + std::to_string(samples - 1) + " has " + std::to_string(cur_step) +
                           " timesteps, expected " + std::to_string(steps),
                       row, 2);
    }
  };
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw ParseError("ragged row: expected " + std::to_string(header.size()) + " cells, found " +
                           std::to_string(cells.size()),
                       row, std::min(cells.size(), header.size()) + 1);
    }
    const auto sample = parse<std::size_t>(cells[0], row, 1);
    const auto step = parse<std::size_t>(cells[1], row, 2);
    if (step == 0) {
      if (samples > 0) close_sample(row);
      if (sample != samples) throw ParseError("sample ids must be consecutive from 0", row, 1);
      ++samples;
      cur_step = 0;
    } else if (samples == 0 || sample != samples - 1 || step != cur_step) {
      throw ParseError("rows must be ordered by sample_id then timestep without gaps", row, 2);
    }
    for (std::size_t f = 0; f < features; ++f) values.push_back(parse<double>(cells[2 + f], row, f + 3));
    ++cur_step;
  }
  if (samples == 0) return SequenceBatch(0, 1, features);
  close_sample(row);
  return SequenceBatch(samples, steps, features, std::move(values));
}

SequenceBatch import_sequences_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ContractError("cannot open " + path.string());
  SequenceBatch out = import_sequences_csv(in);
  out.set_provenance(path.filename().string());
  return out;
}

}  // namespace chronogan::data
