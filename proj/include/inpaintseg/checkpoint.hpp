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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>

#include "inpaintseg/discriminator.hpp"
#include "inpaintseg/generator.hpp"

namespace inpaintseg {

inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Network state for one window size.
struct ModelCheckpoint {
  Generator generator;
  Discriminator discriminator;
  int gamma = 0;
  std::uint64_t config_digest = 0;
  std::uint32_t version = kCheckpointVersion;
};

/// 64-bit FNV-1a; used for config and file digests.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex_digest(std::uint64_t digest);

/// Binary layout: magic "INPSEGCK", version, gamma, config digest, both specs, every
/// parameter array and spectral estimate as raw little-endian doubles, then an
/// FNV-1a checksum of everything before it.
void save_checkpoint(const ModelCheckpoint& ckpt, const std::filesystem::path& path);

/// Throws VersionError on a version mismatch and FormatError on corrupt or truncated data.
ModelCheckpoint load_checkpoint(const std::filesystem::path& path);

/// Digest of the checkpoint file contents, recorded next to derived artifacts.
std::uint64_t checkpoint_file_digest(const std::filesystem::path& path);

}  // namespace inpaintseg
