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
#include <random>
#include <string>
#include <vector>

#include "inpaintseg/slice.hpp"

namespace inpaintseg {

/// Synthetic "brain slice" dataset description.
struct SynthSpec {
  int width = 64;
  int height = 64;
  int n_normal = 0;
  int n_anomalous = 0;
  double radius_min = 6.0;
  double radius_max = 10.0;
  std::uint64_t seed = 1;

  void validate() const;
};

struct AnomalousSample {
  Slice slice;
  BinaryMask mask;
};

/// Black background plus an elliptical foreground with smooth band-limited texture
/// and a brighter rim.
Slice normal_slice(const SynthSpec& spec, std::mt19937_64& rng);

/// A normal slice with one disc of bright, checkerboard-textured tissue placed well
/// inside the foreground. The mask is exactly the disc's support.
AnomalousSample anomalous_slice(const SynthSpec& spec, std::mt19937_64& rng);

/// Generates spec.n_normal / spec.n_anomalous samples from per-sample seeds drawn
/// from `rng`, so output does not depend on the worker count.
std::vector<Slice> gen_normal(const SynthSpec& spec, std::mt19937_64& rng);
std::vector<AnomalousSample> gen_anomalous(const SynthSpec& spec, std::mt19937_64& rng);

/// The foreground (ellipse) support used by the generator for a given sample, for tests.
BinaryMask foreground_of(const Slice& slice);

struct ManifestEntry {
  std::string filename;
  std::string label;  // "normal" or "anomalous"
  std::string mask;   // mask filename, "-" when absent
};

inline constexpr const char* kManifestName = "manifest.txt";

/// Writes PNG images, masks and the manifest ("filename label mask" per line) to `dir`.
std::vector<ManifestEntry> write_dataset(const SynthSpec& spec, const std::filesystem::path& dir);

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& dir);
void write_manifest(const std::vector<ManifestEntry>& entries, const std::filesystem::path& dir);

}  // namespace inpaintseg
