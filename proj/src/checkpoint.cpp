// Copyright 2026 The inpaintseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "inpaintseg/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "inpaintseg/errors.hpp"

namespace inpaintseg {

static_assert(std::endian::native == std::endian::little, "checkpoint format assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'I', 'N', 'P', 'S', 'E', 'G', 'C', 'K'};

class Writer {
 public:
  template <typename T>
  void put(T v) {
    const char* p = reinterpret_cast<const char*>(&v);
    buf_.append(p, sizeof(T));
  }
  void put_doubles(const std::vector<double>& xs) {
    put<std::uint64_t>(xs.size());
    buf_.append(reinterpret_cast<const char*>(xs.data()), xs.size() * sizeof(double));
  }
  void raw(const char* p, std::size_t n) { buf_.append(p, n); }
  const std::string& bytes() const { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  void get_doubles(std::vector<double>& xs) {
    const auto n = get<std::uint64_t>();
    if (n != xs.size()) throw FormatError("checkpoint array size does not match network spec");
    need(n * sizeof(double));
    std::memcpy(xs.data(), bytes_.data() + pos_, n * sizeof(double));
    pos_ += n * sizeof(double);
  }
  void need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) throw FormatError("checkpoint is truncated");
  }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

void put_generator_spec(Writer& w, const GeneratorSpec& s) {
  w.put<std::int32_t>(s.depth);
  w.put<std::int32_t>(s.base_channels);
  w.put<std::int32_t>(s.width);
  w.put<std::int32_t>(s.height);
}

void put_discriminator_spec(Writer& w, const DiscriminatorSpec& s) {
  w.put<std::int32_t>(s.depth);
  w.put<std::int32_t>(s.base_channels);
  w.put<std::int32_t>(s.spectral_norm_iters);
  w.put<std::int32_t>(s.width);
  w.put<std::int32_t>(s.height);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex_digest(std::uint64_t digest) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << digest;
  return os.str();
}

void save_checkpoint(const ModelCheckpoint& ckpt, const std::filesystem::path& path) {
  Writer w;
  w.raw(kMagic, sizeof(kMagic));
  w.put<std::uint32_t>(ckpt.version);
  w.put<std::int32_t>(ckpt.gamma);
  w.put<std::uint64_t>(ckpt.config_digest);
  put_generator_spec(w, ckpt.generator.spec());
  put_discriminator_spec(w, ckpt.discriminator.spec());
  for (const Param* p : ckpt.generator.parameters()) w.put_doubles(p->value);
  for (const Param* p : ckpt.discriminator.parameters()) w.put_doubles(p->value);
  for (const SpectralConv* l : ckpt.discriminator.spectral_layers()) {
    w.put_doubles(l->u);
    w.put_doubles(l->v);
  }
  const std::uint64_t checksum = fnv1a64(w.bytes());
  w.put<std::uint64_t>(checksum);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write checkpoint " + path.string());
  out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
  if (!out) throw IoError("write failed: " + path.string());
}

ModelCheckpoint load_checkpoint(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  if (bytes.size() < sizeof(kMagic) + 4 || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw FormatError("not a checkpoint file: " + path.string());
  }
  Reader r(bytes);
  for (std::size_t i = 0; i < sizeof(kMagic); ++i) r.get<char>();
  const auto version = r.get<std::uint32_t>();
  if (version != kCheckpointVersion) {
    throw VersionError("checkpoint version " + std::to_string(version) + " is not supported (expected " +
                       std::to_string(kCheckpointVersion) + ")");
  }
  if (bytes.size() < 8) throw FormatError("checkpoint is truncated");
  const std::string_view payload(bytes.data(), bytes.size() - 8);
  std::uint64_t stored = 0;
  std::memcpy(&stored, bytes.data() + bytes.size() - 8, 8);
  if (fnv1a64(payload) != stored) throw FormatError("checkpoint checksum mismatch: " + path.string());

  const auto gamma = r.get<std::int32_t>();
  const auto digest = r.get<std::uint64_t>();
  GeneratorSpec gs;
  gs.depth = r.get<std::int32_t>();
  gs.base_channels = r.get<std::int32_t>();
  gs.width = r.get<std::int32_t>();
  gs.height = r.get<std::int32_t>();
  DiscriminatorSpec ds;
  ds.depth = r.get<std::int32_t>();
  ds.base_channels = r.get<std::int32_t>();
  ds.spectral_norm_iters = r.get<std::int32_t>();
  ds.width = r.get<std::int32_t>();
  ds.height = r.get<std::int32_t>();

  try {
    gs.validate();
    ds.validate();
  } catch (const Error& e) {
    throw FormatError(std::string("checkpoint holds an invalid network spec: ") + e.what());
  }
  ModelCheckpoint ckpt{Generator(gs), Discriminator(ds), gamma, digest, version};
  for (Param* p : ckpt.generator.parameters()) r.get_doubles(p->value);
  for (Param* p : ckpt.discriminator.parameters()) r.get_doubles(p->value);
  for (SpectralConv* l : ckpt.discriminator.spectral_layers()) {
    r.get_doubles(l->u);
    r.get_doubles(l->v);
  }
  if (r.pos() != payload.size()) throw FormatError("checkpoint has trailing data");
  return ckpt;
}

std::uint64_t checkpoint_file_digest(const std::filesystem::path& path) { return fnv1a64(read_file(path)); }

}  // namespace inpaintseg
