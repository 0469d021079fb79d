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

#include "inpaintseg/synth.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "inpaintseg/image_io.hpp"

namespace inpaintseg {
namespace fs = std::filesystem;

namespace {

constexpr double kTissueBase = 95.0;
constexpr double kTextureAmplitude = 22.0;
constexpr double kAnomalyBase = 215.0;
constexpr double kAnomalyChecker = 25.0;
// Anomalies stay inside this normalized elliptical radius.
constexpr double kAnomalyMaxRho = 0.8;
constexpr int kTextureWaves = 4;

struct Brain {
  double cx, cy, a, b;

  double rho(double x, double y) const {
    const double dx = (x - cx) / a;
    const double dy = (y - cy) / b;
    return std::sqrt(dx * dx + dy * dy);
  }
};

struct Wave {
  double fx, fy, phase, amp;
};

Brain draw_brain(const SynthSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> jitter(-1.5, 1.5);
  std::uniform_real_distribution<double> stretch(0.95, 1.05);
  Brain br;
  br.cx = spec.width / 2.0 - 0.5 + jitter(rng);
  br.cy = spec.height / 2.0 - 0.5 + jitter(rng);
  br.a = 0.40 * spec.width * stretch(rng);
  br.b = 0.44 * spec.height * stretch(rng);
  return br;
}

std::vector<Wave> draw_texture(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> wavelength(12.0, 32.0);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> weight(0.5, 1.0);
  std::vector<Wave> waves(kTextureWaves);
  double total = 0.0;
  for (Wave& w : waves) {
    const double f = 2.0 * std::numbers::pi / wavelength(rng);
    const double th = angle(rng);
    w = {f * std::cos(th), f * std::sin(th), phase(rng), weight(rng)};
    total += w.amp;
  }
  for (Wave& w : waves) w.amp /= total;
  return waves;
}

Slice render_normal(const SynthSpec& spec, const Brain& br, const std::vector<Wave>& waves) {
  Slice s(spec.width, spec.height, 0.0);
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      const double rho = br.rho(x, y);
      if (rho > 1.0) continue;
      double t = 0.0;
      for (const Wave& w : waves) t += w.amp * std::sin(w.fx * x + w.fy * y + w.phase);
      s.at(x, y) = std::clamp(kTissueBase + kTextureAmplitude * t, 1.0, 255.0);
    }
  }
  return s;
}

}  // namespace

void SynthSpec::validate() const {
  if (width < 16 || height < 16) throw ValueError("synthetic slices must be at least 16x16");
  if (n_normal < 0 || n_anomalous < 0) throw ValueError("sample counts must be >= 0");
  if (!(radius_min > 0.0) || radius_max < radius_min) throw ValueError("invalid anomaly radius range");
  if (n_anomalous == 0) return;
  // The smallest possible ellipse semi-axis times the allowed radius fraction.
  const double room = kAnomalyMaxRho * 0.40 * 0.95 * std::min(width, height);
  if (radius_max + 1.0 > room) {
    throw ValueError("anomaly radius " + std::to_string(radius_max) + " does not fit inside the foreground");
  }
}

Slice normal_slice(const SynthSpec& spec, std::mt19937_64& rng) {
  const Brain br = draw_brain(spec, rng);
  const auto waves = draw_texture(rng);
  return render_normal(spec, br, waves);
}

AnomalousSample anomalous_slice(const SynthSpec& spec, std::mt19937_64& rng) {
  const Brain br = draw_brain(spec, rng);
  const auto waves = draw_texture(rng);
  Slice s = render_normal(spec, br, waves);

  std::uniform_real_distribution<double> radius(spec.radius_min, spec.radius_max);
  const double r = radius(rng);
  const int reach = static_cast<int>(std::ceil(r));
  std::uniform_int_distribution<int> px(reach, spec.width - 1 - reach);
  std::uniform_int_distribution<int> py(reach, spec.height - 1 - reach);
  int cx = 0, cy = 0;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 10000) throw ValueError("could not place an anomaly inside the foreground");
    cx = px(rng);
    cy = py(rng);
    // The disc fits when its farthest points stay inside the shrunken ellipse.
    bool inside = true;
    for (int dy = -reach; dy <= reach && inside; ++dy) {
      for (int dx = -reach; dx <= reach; ++dx) {
        if (dx * dx + dy * dy <= r * r && br.rho(cx + dx, cy + dy) > kAnomalyMaxRho) {
          inside = false;
          break;
        }
      }
    }
    if (inside) break;
  }

  BinaryMask mask(spec.width, spec.height);
  for (int dy = -reach; dy <= reach; ++dy) {
    for (int dx = -reach; dx <= reach; ++dx) {
      if (dx * dx + dy * dy > r * r) continue;
      const int x = cx + dx;
      const int y = cy + dy;
      s.at(x, y) = kAnomalyBase + (((x + y) & 1) ? kAnomalyChecker : -kAnomalyChecker);
      mask.set(x, y, true);
    }
  }
  return {std::move(s), std::move(mask)};
}

std::vector<Slice> gen_normal(const SynthSpec& spec, std::mt19937_64& rng) {
  spec.validate();
  std::vector<std::uint64_t> seeds(spec.n_normal);
  for (auto& s : seeds) s = rng();
  std::vector<Slice> out(spec.n_normal);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < spec.n_normal; ++i) {
    std::mt19937_64 local(seeds[i]);
    out[i] = normal_slice(spec, local);
  }
  return out;
}

std::vector<AnomalousSample> gen_anomalous(const SynthSpec& spec, std::mt19937_64& rng) {
  spec.validate();
  std::vector<std::uint64_t> seeds(spec.n_anomalous);
  for (auto& s : seeds) s = rng();
  std::vector<AnomalousSample> out(spec.n_anomalous);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < spec.n_anomalous; ++i) {
    std::mt19937_64 local(seeds[i]);
    out[i] = anomalous_slice(spec, local);
  }
  return out;
}

BinaryMask foreground_of(const Slice& slice) {
  BinaryMask m(slice.width(), slice.height());
  auto px = slice.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) m.set(i, px[i] > 0.0);
  return m;
}

std::vector<ManifestEntry> write_dataset(const SynthSpec& spec, const fs::path& dir) {
  spec.validate();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());

  std::mt19937_64 rng(spec.seed);
  const auto normal = gen_normal(spec, rng);
  const auto anomalous = gen_anomalous(spec, rng);

  auto numbered = [](const char* prefix, int i, const char* suffix) {
    std::ostringstream os;
    os << prefix;
    os.width(4);
    os.fill('0');
    os << i << suffix;
    return os.str();
  };
  std::vector<ManifestEntry> entries;
  for (int i = 0; i < spec.n_normal; ++i) {
    const std::string name = numbered("normal_", i, ".png");
    save_slice(normal[i], dir / name);
    entries.push_back({name, "normal", "-"});
  }
  for (int i = 0; i < spec.n_anomalous; ++i) {
    const std::string name = numbered("anomalous_", i, ".png");
    const std::string mask = numbered("anomalous_", i, "_mask.png");
    save_slice(anomalous[i].slice, dir / name);
    save_slice(mask_to_slice(anomalous[i].mask), dir / mask);
    entries.push_back({name, "anomalous", mask});
  }
  write_manifest(entries, dir);
  return entries;
}

void write_manifest(const std::vector<ManifestEntry>& entries, const fs::path& dir) {
  std::ofstream out(dir / kManifestName, std::ios::trunc);
  if (!out) throw IoError("cannot write manifest in " + dir.string());
  for (const auto& e : entries) out << e.filename << ' ' << e.label << ' ' << e.mask << '\n';
  if (!out) throw IoError("manifest write failed in " + dir.string());
}

std::vector<ManifestEntry> read_manifest(const fs::path& dir) {
  const fs::path path = dir / kManifestName;
  std::ifstream in(path);
  if (!in) throw IoError("no manifest at " + path.string());
  std::vector<ManifestEntry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    ManifestEntry e;
    if (!(ls >> e.filename >> e.label >> e.mask) || (e.label != "normal" && e.label != "anomalous")) {
      throw FormatError("malformed manifest line " + std::to_string(lineno) + " in " + path.string());
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace inpaintseg
