// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "chronogan/checkpoint.hpp"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <limits>

#include "json.hpp"

#include "chronogan/errors.hpp"
#include "chronogan/rng.hpp"

namespace chronogan::data {

namespace {

using nlohmann::json;

static_assert(std::numeric_limits<float>::is_iec559, "checkpoint values are IEEE-754 binary32");

constexpr char kMagic[4] = {'C', 'G', 'N', '1'};
constexpr std::uint32_t kMaxNameLength = 1U << 12;
constexpr std::uint32_t kMaxRank = 8;

class Writer {
 public:
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void raw(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    bytes_.insert(bytes_.end(), b, b + n);
  }
  std::vector<std::uint8_t>& bytes() { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
};

class Reader {
 public:
  Reader(const std::uint8_t* p, std::size_t n) : p_(p), n_(n) {}

  std::uint32_t u32(const char* what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p_[pos_ + static_cast<std::size_t>(i)]) << (8 * i);
    pos_ += 4;
    return v;
  }
  float f32(const char* what) { return std::bit_cast<float>(u32(what)); }
  std::string str(std::size_t n, const char* what) {
    need(n, what);
    std::string s(reinterpret_cast<const char*>(p_ + pos_), n);
    pos_ += n;
    return s;
  }
  void need(std::size_t n, const char* what) const {
    if (n > n_ - pos_) throw FormatError(std::string("checkpoint truncated while reading ") + what);
  }
  std::size_t remaining() const { return n_ - pos_; }
  std::size_t position() const { return pos_; }

 private:
  const std::uint8_t* p_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

json meta_to_json(const nn::ModelDims& dims, const CheckpointMeta& meta) {
  json j;
  j["dims"] = {{"feature_dim", dims.feature_dim}, {"latent_dim", dims.latent_dim},
               {"hidden_dim", dims.hidden_dim},   {"noise_dim", dims.noise_dim},
               {"gru_layers", dims.gru_layers},   {"lstm_layers", dims.lstm_layers}};
  j["sequence_length"] = meta.sequence_length;
  if (meta.norm) {
    json ranges = json::array();
    for (const FeatureRange& r : *meta.norm) ranges.push_back({r.min, r.max});
    j["norm"] = ranges;
  } else {
    j["norm"] = nullptr;
  }
  j["early_generation"] = {{"total_error", optional_number(meta.early_gen.total_error)},
                           {"p1", optional_number(meta.early_gen.p1)},
                           {"p2", optional_number(meta.early_gen.p2)},
                           {"best_epoch", meta.early_gen.best_epoch ? json(*meta.early_gen.best_epoch) : json(nullptr)}};
  j["config"] = meta.config_json;
  return j;
}

nn::ModelDims dims_from_json(const json& d) {
  nn::ModelDims dims;
  dims.feature_dim = d.at("feature_dim").get<std::size_t>();
  dims.latent_dim = d.at("latent_dim").get<std::size_t>();
  dims.hidden_dim = d.at("hidden_dim").get<std::size_t>();
  dims.noise_dim = d.at("noise_dim").get<std::size_t>();
  dims.gru_layers = d.at("gru_layers").get<std::size_t>();
  dims.lstm_layers = d.at("lstm_layers").get<std::size_t>();
  return dims;
}

CheckpointMeta meta_from_json(const json& j) {
  CheckpointMeta meta;
  meta.sequence_length = j.at("sequence_length").get<std::size_t>();
  if (!j.at("norm").is_null()) {
    std::vector<FeatureRange> ranges;
    for (const json& r : j.at("norm")) ranges.push_back({r.at(0).get<double>(), r.at(1).get<double>()});
    meta.norm = std::move(ranges);
  }
  const json& eg = j.at("early_generation");
  meta.early_gen.total_error = read_optional(eg, "total_error");
  meta.early_gen.p1 = read_optional(eg, "p1");
  meta.early_gen.p2 = read_optional(eg, "p2");
  if (!eg.at("best_epoch").is_null()) meta.early_gen.best_epoch = eg.at("best_epoch").get<long>();
  meta.config_json = j.at("config").get<std::string>();
  return meta;
}

std::uint32_t checksum(const std::uint8_t* p, std::size_t n) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks to stay portable.
  while (n > 0) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(n, 1U << 30));
    crc = crc32(crc, p, chunk);
    p += chunk;
    n -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(const nn::ModelBundle<float>& bundle, const CheckpointMeta& meta) {
  Writer w;
  w.raw(kMagic, sizeof kMagic);
  w.u32(kCheckpointVersion);
  const auto params = bundle.parameters();
  w.u32(static_cast<std::uint32_t>(params.size()));
  for (const ad::Parameter<float>* p : params) {
    w.u32(static_cast<std::uint32_t>(p->name.size()));
    w.raw(p->name.data(), p->name.size());
    w.u32(static_cast<std::uint32_t>(p->value.rank()));
    for (std::size_t d : p->value.shape()) w.u32(static_cast<std::uint32_t>(d));
    for (float v : p->value.values()) w.f32(v);
  }
  const std::string text = meta_to_json(bundle.dims(), meta).dump();
  w.u32(static_cast<std::uint32_t>(text.size()));
  w.raw(text.data(), text.size());
  w.u32(checksum(w.bytes().data(), w.bytes().size()));
  return std::move(w.bytes());
}

Checkpoint decode_checkpoint(const std::vector<std::uint8_t>& bytes) {
  Reader r(bytes.data(), bytes.size());
  if (r.str(4, "magic") != std::string(kMagic, 4)) throw FormatError("not a checkpoint: bad magic");
  const std::uint32_t version = r.u32("version");
  if (version != kCheckpointVersion) throw FormatError("unsupported checkpoint version " + std::to_string(version));

  const std::uint32_t count = r.u32("tensor count");
  std::map<std::string, ad::Tensor<float>> table;
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t name_len = r.u32("name length");
    if (name_len == 0 || name_len > kMaxNameLength) throw FormatError("implausible tensor name length");
    std::string name = r.str(name_len, "tensor name");
    const std::uint32_t rank = r.u32("rank");
    if (rank > kMaxRank) throw FormatError("implausible rank for " + name);
    ad::Shape shape(rank);
    std::size_t elements = 1;
    for (auto& d : shape) {
      d = r.u32("dims");
      if (d == 0) throw FormatError("zero dimension in " + name);
      elements *= d;
      if (elements > r.remaining() / 4) throw FormatError("checkpoint truncated in tensor " + name);
    }
    std::vector<float> values(elements);
    for (float& v : values) v = r.f32("tensor values");
    if (!table.emplace(name, ad::Tensor<float>(std::move(shape), std::move(values))).second) {
      throw FormatError("duplicate tensor " + name);
    }
  }

  const std::uint32_t meta_len = r.u32("metadata length");
  const std::string text = r.str(meta_len, "metadata");
  const std::size_t covered = r.position();
  const std::uint32_t stored_crc = r.u32("checksum");
  if (r.remaining() != 0) throw FormatError("trailing bytes after checksum");
  if (checksum(bytes.data(), covered) != stored_crc) throw FormatError("checksum mismatch");

  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed checkpoint metadata: ") + e.what());
  }

  Checkpoint cp;
  try {
    const nn::ModelDims dims = dims_from_json(j.at("dims"));
    cp.meta = meta_from_json(j);
    Rng unused(0);
    cp.bundle = nn::ModelBundle<float>(dims, nn::Init::zero, unused);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed checkpoint metadata: ") + e.what());
  } catch (const std::logic_error& e) {  // ContractError or ShapeError from the constructor
    throw FormatError(std::string("checkpoint dims are invalid: ") + e.what());
  }

  auto params = cp.bundle.parameters();
  if (params.size() != table.size()) {
    throw FormatError("checkpoint holds " + std::to_string(table.size()) + " tensors; architecture expects " +
                      std::to_string(params.size()));
  }
  for (ad::Parameter<float>* p : params) {
    auto it = table.find(p->name);
    if (it == table.end()) throw FormatError("checkpoint lacks tensor " + p->name);
    if (it->second.shape() != p->value.shape()) {
      throw FormatError("tensor " + p->name + " has shape " + ad::to_string(it->second.shape()) + ", expected " +
                        ad::to_string(p->value.shape()));
    }
    p->value = std::move(it->second);
  }
  return cp;
}

void save_checkpoint(const std::filesystem::path& path, const nn::ModelBundle<float>& bundle,
                     const CheckpointMeta& meta) {
  const auto bytes = encode_checkpoint(bundle, meta);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ContractError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ContractError("write failed for " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open checkpoint " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

}  // namespace chronogan::data
