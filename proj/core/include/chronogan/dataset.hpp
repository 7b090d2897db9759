// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>

#include "chronogan/sequence_batch.hpp"

namespace chronogan::data {

/// Each feature of each sample is sin(2 pi eta t + theta) for t = 0..T-1 with
/// eta ~ U[0, 1] and theta ~ U[-pi, pi] drawn independently. Returned batch is
/// min-max normalized over the whole set unless `normalize` is false.
SequenceBatch generate_sines(std::size_t samples, std::size_t steps, std::size_t features, std::uint64_t seed,
                             bool normalize = true);

/// Default seed for shuffling windows cut from a CSV file.
inline constexpr std::uint64_t kWindowShuffleSeed = 0x5eed'c0de;

/// Columnar CSV (header row, numeric cells) -> overlapping windows of `steps`
/// rows taken every `stride` rows. Normalizes per column over the whole file,
/// then shuffles the windows with `seed`.
///
/// ParseError(row, column) for a non-numeric or missing cell (rows count the
/// header as row 1). ContractError when the file has fewer than `steps` rows.
SequenceBatch load_csv_windows(const std::filesystem::path& path, std::size_t steps, std::size_t stride,
                               std::uint64_t seed = kWindowShuffleSeed);
SequenceBatch load_csv_windows(std::istream& in, std::size_t steps, std::size_t stride,
                               std::uint64_t seed = kWindowShuffleSeed);

}  // namespace chronogan::data
