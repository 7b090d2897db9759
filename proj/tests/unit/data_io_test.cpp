// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "chronogan/checkpoint.hpp"
#include "chronogan/dataset.hpp"
#include "chronogan/errors.hpp"
#include "chronogan/sequence_batch.hpp"
#include "chronogan/sequence_csv.hpp"

namespace chronogan {
namespace {

namespace fs = std::filesystem;
using data::SequenceBatch;

std::vector<double> vals(const SequenceBatch& b) { return {b.values().begin(), b.values().end()}; }

fs::path temp_path(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "chronogan_data_io_test";
  fs::create_directories(dir);
  return dir / name;
}

TEST(Batch, ConstructionAndAccess) {
  SequenceBatch b(2, 3, 2);
  EXPECT_EQ(b.values().size(), 12u);
  b.at(1, 2, 1) = 5.0;
  EXPECT_EQ(b.values()[11], 5.0);
  EXPECT_THROW(SequenceBatch(2, 0, 1), ContractError);
  EXPECT_THROW(SequenceBatch(2, 2, 2, {1.0}), ShapeError);
  EXPECT_TRUE(SequenceBatch(0, 3, 2).empty());
}

TEST(Batch, SubsetSliceShift) {
  SequenceBatch b(3, 1, 1, {0.1, 0.2, 0.3});
  b.set_norm(std::vector<data::FeatureRange>{{0.0, 1.0}});
  const std::size_t idx[] = {2, 0};
  const auto s = b.subset(idx);
  EXPECT_EQ(vals(s), (std::vector<double>{0.3, 0.1}));
  EXPECT_TRUE(s.norm().has_value());
  EXPECT_EQ(vals(b.slice(1, 3)), (std::vector<double>{0.2, 0.3}));
  const auto sh = b.shifted(1.0);
  EXPECT_DOUBLE_EQ(sh.values()[0], 1.1);
  EXPECT_FALSE(sh.norm().has_value());
}

TEST(Batch, Validate) {
  SequenceBatch b(1, 2, 1, {0.5, 1.5});
  EXPECT_NO_THROW(b.validate());
  b.set_norm(std::vector<data::FeatureRange>{{0.0, 1.0}});
  EXPECT_THROW(b.validate(), DomainError);
  SequenceBatch nan(1, 1, 1, {std::nan("")});
  EXPECT_THROW(nan.validate(), DomainError);
}

TEST(Normalize, MinMaxAndInverse) {
  SequenceBatch b(2, 2, 2, {1, 10, 2, 20, 3, 30, 5, 50});
  const auto n = data::minmax_normalize(b);
  const auto& r = *n.norm();
  EXPECT_EQ(r[0], (data::FeatureRange{1, 5}));
  EXPECT_EQ(r[1], (data::FeatureRange{10, 50}));
  for (double v : n.values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_NEAR(n.at(1, 1, 0), 4.0 / (4.0 + data::kNormGuard), 1e-15);
  const auto back = data::denormalize(n);
  for (std::size_t i = 0; i < b.values().size(); ++i) EXPECT_NEAR(back.values()[i], b.values()[i], 1e-12);
  EXPECT_THROW(data::minmax_normalize(n), ContractError);
  EXPECT_THROW(data::denormalize(b), ContractError);
}

TEST(Normalize, ConstantFeatureMapsToZero) {
  const auto n = data::minmax_normalize(SequenceBatch(2, 1, 1, {4, 4}));
  EXPECT_EQ(n.values()[0], 0.0);
}

TEST(Normalize, ExternalRangesClamp) {
  const data::FeatureRange r[] = {{0.0, 10.0}};
  const auto n = data::normalize_with(SequenceBatch(1, 3, 1, {-5, 5, 15}), r);
  EXPECT_EQ(n.values()[0], 0.0);
  EXPECT_NEAR(n.values()[1], 0.5, 1e-9);
  EXPECT_EQ(n.values()[2], 1.0);
}

TEST(Batch, TensorRoundTrip) {
  const auto s = data::generate_sines(3, 4, 2, 1);
  const auto t = s.to_tensor<double>();
  EXPECT_EQ(t.shape(), (ad::Shape{3, 4, 2}));
  EXPECT_EQ(vals(SequenceBatch::from_tensor(t)), vals(s));
  EXPECT_THROW(SequenceBatch(0, 4, 2).to_tensor<float>(), ContractError);
}

TEST(Sines, FollowTheGeneratingProcess) {
  const auto raw = data::generate_sines(5, 12, 3, 77, false);
  Rng rng(77);
  for (std::size_t n = 0; n < 5; ++n)
    for (std::size_t f = 0; f < 3; ++f) {
      const double eta = rng.uniform();
      const double theta = rng.uniform(-std::numbers::pi, std::numbers::pi);
      for (std::size_t t = 0; t < 12; ++t)
        EXPECT_EQ(raw.at(n, t, f), std::sin(2 * std::numbers::pi * eta * static_cast<double>(t) + theta));
    }
  EXPECT_FALSE(raw.norm().has_value());
}

TEST(Sines, NormalizedAndDeterministic) {
  const auto a = data::generate_sines(50, 24, 5, 3), b = data::generate_sines(50, 24, 5, 3);
  EXPECT_EQ(vals(a), vals(b));
  EXPECT_TRUE(a.norm().has_value());
  EXPECT_NO_THROW(a.validate());
  EXPECT_NE(vals(a), vals(data::generate_sines(50, 24, 5, 4)));
  EXPECT_EQ(a.provenance(), "sines(seed=3)");
}

TEST(CsvWindows, SlidingWindowsOverNormalizedTable) {
  std::istringstream in("a,b\n0,10\n1,20\n2,30\n3,40\n4,50\n");
  const auto w = data::load_csv_windows(in, 3, 1);
  EXPECT_EQ(w.samples(), 3u);
  EXPECT_EQ(w.steps(), 3u);
  EXPECT_EQ(w.features(), 2u);
  // Window starts are a permutation of {0, 1, 2}; each window is consecutive rows.
  std::set<long> starts;
  for (std::size_t i = 0; i < 3; ++i) {
    const long s = std::lround(w.at(i, 0, 0) * 4.0);
    starts.insert(s);
    for (std::size_t t = 0; t < 3; ++t) {
      EXPECT_NEAR(w.at(i, t, 0), static_cast<double>(s + static_cast<long>(t)) / 4.0, 1e-8);
      EXPECT_NEAR(w.at(i, t, 1), w.at(i, t, 0), 1e-8);
    }
  }
  EXPECT_EQ(starts, (std::set<long>{0, 1, 2}));
}

TEST(CsvWindows, StrideAndDeterminism) {
  const std::string text = "x\n0\n1\n2\n3\n4\n5\n6\n";
  std::istringstream a(text), b(text);
  const auto wa = data::load_csv_windows(a, 3, 2, 5), wb = data::load_csv_windows(b, 3, 2, 5);
  EXPECT_EQ(wa.samples(), 3u);
  EXPECT_EQ(vals(wa), vals(wb));
}

TEST(CsvWindows, Errors) {
  std::istringstream ragged("a,b\n1,2\n3\n");
  try {
    data::load_csv_windows(ragged, 1, 1);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 3u);
  }
  std::istringstream bad("a,b\n1,2\n3,x\n");
  try {
    data::load_csv_windows(bad, 1, 1);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 3u);
    EXPECT_EQ(e.column(), 2u);
  }
  std::istringstream few("a\n1\n2\n");
  EXPECT_THROW(data::load_csv_windows(few, 3, 1), ContractError);
  EXPECT_THROW(data::load_csv_windows(fs::path("/nonexistent/file.csv"), 3, 1), ContractError);
}

TEST(SequenceCsv, RoundTripIsExact) {
  const auto s = data::generate_sines(4, 5, 3, 9);
  std::stringstream io;
  data::export_sequences_csv(s, io);
  const auto back = data::import_sequences_csv(io);
  EXPECT_EQ(back.samples(), 4u);
  EXPECT_EQ(vals(back), vals(s));
}

TEST(SequenceCsv, Layout) {
  SequenceBatch b(2, 2, 1, {0.5, 0.25, 1, 0});
  std::ostringstream out;
  data::export_sequences_csv(b, out);
  EXPECT_EQ(out.str(), "sample_id,timestep,f0\n0,0,0.5\n0,1,0.25\n1,0,1\n1,1,0\n");
}

TEST(SequenceCsv, HeaderOnly) {
  std::istringstream in("sample_id,timestep,f0,f1\n");
  const auto b = data::import_sequences_csv(in);
  EXPECT_TRUE(b.empty());
  EXPECT_EQ(b.features(), 2u);
}

TEST(SequenceCsv, MalformedInputs) {
  auto fails = [](const std::string& text) {
    std::istringstream in(text);
    EXPECT_THROW(data::import_sequences_csv(in), ParseError) << text;
  };
  fails("");
  fails("id,timestep,f0\n");
  fails("sample_id,timestep,g0\n");
  fails("sample_id,timestep,f0\n0,0\n");
  fails("sample_id,timestep,f0\n0,1,0.5\n");
  fails("sample_id,timestep,f0\n0,0,0.5\n0,1,0.5\n1,0,0.5\n");
  fails("sample_id,timestep,f0\n1,0,0.5\n");
  fails("sample_id,timestep,f0\n0,0,abc\n");
}

nn::ModelBundle<float> random_bundle(std::uint64_t seed, std::size_t features) {
  Rng rng(seed);
  nn::ModelDims d = nn::ModelDims::for_features(features);
  d.hidden_dim = 3 + seed % 4;
  d.latent_dim = 2 + seed % 3;
  d.gru_layers = 1 + seed % 2;
  d.lstm_layers = 1 + (seed / 2) % 2;
  return nn::ModelBundle<float>(d, nn::Init::uniform, rng);
}

data::CheckpointMeta sample_meta() {
  data::CheckpointMeta m;
  m.sequence_length = 24;
  m.norm = std::vector<data::FeatureRange>{{-1.0, 1.0}, {0.1, 0.30000000000000004}};
  m.early_gen = {0.25, 1.5, 3.0, 2500};
  m.config_json = R"({"train":{"seed":1}})";
  return m;
}

bool same_bits(const nn::ModelBundle<float>& a, const nn::ModelBundle<float>& b) {
  const auto pa = a.parameters(), pb = b.parameters();
  if (pa.size() != pb.size()) return false;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (pa[i]->name != pb[i]->name || pa[i]->value.shape() != pb[i]->value.shape()) return false;
    if (std::memcmp(pa[i]->value.data(), pb[i]->value.data(), pa[i]->value.size() * sizeof(float)) != 0) return false;
  }
  return true;
}

TEST(Checkpoint, RoundTripIsBitExact) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto b = random_bundle(seed, 1 + seed % 5);
    const auto ck = data::decode_checkpoint(data::encode_checkpoint(b, sample_meta()));
    EXPECT_TRUE(same_bits(b, ck.bundle)) << seed;
    EXPECT_EQ(ck.bundle.dims(), b.dims());
    EXPECT_EQ(ck.meta.sequence_length, 24u);
    EXPECT_EQ(ck.meta.norm, sample_meta().norm);
    EXPECT_EQ(ck.meta.early_gen, sample_meta().early_gen);
    EXPECT_EQ(ck.meta.config_json, sample_meta().config_json);
  }
}

TEST(Checkpoint, EmptyOptionalMetadata) {
  data::CheckpointMeta m;
  m.sequence_length = 3;
  const auto ck = data::decode_checkpoint(data::encode_checkpoint(random_bundle(1, 2), m));
  EXPECT_FALSE(ck.meta.norm.has_value());
  EXPECT_FALSE(ck.meta.early_gen.total_error.has_value());
  EXPECT_FALSE(ck.meta.early_gen.best_epoch.has_value());
}

TEST(Checkpoint, FileRoundTrip) {
  const auto path = temp_path("bundle.cgn");
  const auto b = random_bundle(3, 4);
  data::save_checkpoint(path, b, sample_meta());
  EXPECT_TRUE(same_bits(b, data::load_checkpoint(path).bundle));
  EXPECT_THROW(data::load_checkpoint(temp_path("missing.cgn")), FormatError);
}

TEST(Checkpoint, CorruptionIsDetected) {
  const auto bytes = data::encode_checkpoint(random_bundle(2, 3), sample_meta());
  auto flipped = bytes;
  flipped[bytes.size() / 2] ^= 0x10;
  EXPECT_THROW(data::decode_checkpoint(flipped), FormatError);

  auto magic = bytes;
  magic[0] = 'X';
  EXPECT_THROW(data::decode_checkpoint(magic), FormatError);

  auto version = bytes;
  version[4] = 9;
  EXPECT_THROW(data::decode_checkpoint(version), FormatError);

  for (std::size_t cut : {std::size_t{0}, std::size_t{3}, std::size_t{12}, bytes.size() / 3, bytes.size() - 1}) {
    EXPECT_THROW(data::decode_checkpoint({bytes.begin(), bytes.begin() + static_cast<long>(cut)}), FormatError)
        << cut;
  }
  auto trailing = bytes;
  trailing.push_back(0);
  EXPECT_THROW(data::decode_checkpoint(trailing), FormatError);
}

}  // namespace
}  // namespace chronogan
