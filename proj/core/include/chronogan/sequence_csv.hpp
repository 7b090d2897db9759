// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <filesystem>
#include <istream>
#include <ostream>

#include "chronogan/sequence_batch.hpp"

// Long-format interchange: header `sample_id,timestep,f0,...,f{F-1}`, one row
// per (sample, timestep), samples and timesteps in ascending order. Values are
// written in shortest round-trip form, so import(export(b)) is exact.
namespace chronogan::data {

void export_sequences_csv(const SequenceBatch& batch, std::ostream& out);
void export_sequences_csv(const SequenceBatch& batch, const std::filesystem::path& path);

/// ParseError for a malformed header, ragged rows, non-numeric cells, or rows
/// out of order. A header-only file yields an empty batch with T = 1.
SequenceBatch import_sequences_csv(std::istream& in);
SequenceBatch import_sequences_csv(const std::filesystem::path& path);

}  // namespace chronogan::data
