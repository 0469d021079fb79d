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

#include "inpaintseg/commands.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "inpaintseg/checkpoint.hpp"
#include "inpaintseg/masking.hpp"
#include "inpaintseg/normalize.hpp"
#include "inpaintseg/synth.hpp"
#include "inpaintseg/trainer.hpp"

namespace inpaintseg {
namespace fs = std::filesystem;

void apply_workers(const RunConfig& cfg) {
  if (cfg.workers < 1) throw UsageError("workers must be >= 1");
  omp_set_num_threads(cfg.workers);
}

SegmentOutcome segment_slice(const Slice& slice, const Reconstructor& reconstructor, const HeatmapOptions& options,
                             const SegmentationParams& params) {
  SegmentOutcome o;
  o.heatmap = build_heatmap(slice, reconstructor, options);
  o.labels = felzenszwalb(slice, params);
  o.prediction = select_segment(o.labels, o.heatmap);
  return o;
}

namespace {

using Rgb = std::array<std::uint8_t, 3>;

std::uint8_t to_byte(double v) { return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0))); }

Rgb gray(double v) {
  const auto b = to_byte(v);
  return {b, b, b};
}

Rgb hot(double v) {
  const double t = std::clamp(v / 255.0, 0.0, 1.0);
  return {to_byte(765.0 * t), to_byte(765.0 * t - 255.0), to_byte(765.0 * t - 510.0)};
}

bool on_boundary(const LabelMap& lm, int x, int y) {
  const int l = lm.at(x, y);
  return (x + 1 < lm.width && lm.at(x + 1, y) != l) || (y + 1 < lm.height && lm.at(x, y + 1) != l);
}

std::string stem_of(const std::string& filename) { return fs::path(filename).stem().string(); }

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

std::string format_metric(const std::optional<double>& v) {
  if (!v) return "-";
  if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(10) << *v;
  return os.str();
}

}  // namespace

RgbImage render_panels(const Slice& query, const SegmentOutcome& o, const BinaryMask* truth) {
  const int w = query.width();
  const int h = query.height();
  const int panels = truth ? 6 : 5;
  constexpr int kGap = 2;
  RgbImage img(panels * w + (panels - 1) * kGap, h);
  for (auto& p : img.pixels) p = {255, 255, 255};
  const Slice heat = heatmap_to_image(o.heatmap);
  auto panel = [&](int i, auto colour) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) img.at(i * (w + kGap) + x, y) = colour(x, y);
    }
  };
  panel(0, [&](int x, int y) { return gray(query.at(x, y)); });
  panel(1, [&](int x, int y) { return hot(heat.at(x, y)); });
  panel(2, [&](int x, int y) { return on_boundary(o.labels, x, y) ? Rgb{255, 0, 0} : gray(query.at(x, y)); });
  panel(3, [&](int x, int y) {
    const double q = query.at(x, y);
    return o.prediction.at(x, y) ? Rgb{to_byte(0.5 * q + 127.5), to_byte(0.5 * q), to_byte(0.5 * q)} : gray(q);
  });
  panel(4, [&](int x, int y) { return gray(o.prediction.at(x, y) ? 255.0 : 0.0); });
  if (truth) panel(5, [&](int x, int y) { return gray(truth->at(x, y) ? 255.0 : 0.0); });
  return img;
}

std::string evaluation_csv(const std::vector<EvaluationRow>& rows) {
  std::ostringstream os;
  os << "id,dice,psnr,ssim\n";
  for (const auto& r : rows) {
    os << r.id << ',' << format_metric(r.dice) << ',' << format_metric(r.psnr) << ',' << format_metric(r.ssim) << '\n';
  }
  auto column = [&](auto member) {
    std::vector<double> v;
    for (const auto& r : rows) {
      if (r.*member) v.push_back(*(r.*member));
    }
    return v;
  };
  std::optional<MetricReport> reps[3];
  const std::vector<double> cols[3] = {column(&EvaluationRow::dice), column(&EvaluationRow::psnr),
                                       column(&EvaluationRow::ssim)};
  for (int i = 0; i < 3; ++i) {
    if (!cols[i].empty()) reps[i] = report(cols[i]);
  }
  auto field = [](const std::optional<MetricReport>& r, bool mean) {
    return format_metric(r ? std::optional<double>(mean ? r->mean : r->std) : std::nullopt);
  };
  os << "mean," << field(reps[0], true) << ',' << field(reps[1], true) << ',' << field(reps[2], true) << '\n';
  os << "std," << field(reps[0], false) << ',' << field(reps[1], false) << ',' << field(reps[2], false) << '\n';
  return os.str();
}

void cmd_synth(const RunConfig& cfg, std::ostream& log) {
  apply_workers(cfg);
  const SynthSpec spec = cfg.synth_spec();
  const auto entries = write_dataset(spec, cfg.out);
  log << "synth: wrote " << spec.n_normal << " normal and " << spec.n_anomalous << " anomalous " << spec.width
      << "x" << spec.height << " slices (" << entries.size() << " manifest entries) to " << cfg.out << '\n';
}

void cmd_train(const RunConfig& cfg, std::ostream& log) {
  apply_workers(cfg);
  if (cfg.data.empty()) throw UsageError("train needs --data DIR");
  const auto entries = read_manifest(cfg.data);
  std::vector<Slice> healthy;
  for (const auto& e : entries) {
    if (e.label == "normal") healthy.push_back(load_slice(fs::path(cfg.data) / e.filename));
  }
  if (healthy.empty()) throw ValueError("no healthy slices listed in " + cfg.data);

  const GeneratorSpec gs = cfg.generator_spec();
  const DiscriminatorSpec ds = cfg.discriminator_spec();
  for (auto& s : healthy) {
    if (s.width() != gs.width || s.height() != gs.height) s = pad_to(s, gs.width, gs.height);
  }
  const TrainConfig tc = cfg.train_config();
  tc.validate(gs.width, gs.height);

  ensure_dir(cfg.out);
  {
    std::ofstream rc(fs::path(cfg.out) / "run_config.cfg", std::ios::trunc);
    rc << dump_config(cfg);
  }
  log << "train: " << healthy.size() << " healthy slices, gamma=" << tc.gamma << ", " << tc.iterations
      << " iterations, batch " << tc.batch_size << '\n';

  TrainHooks hooks;
  const auto start = std::chrono::steady_clock::now();
  hooks.on_record = [&](const TrainRecord& r) {
    if (cfg.log_every > 0 && (r.iteration + 1) % cfg.log_every == 0) {
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      log << "  iter " << r.iteration + 1 << "  l_rec " << r.l_rec << "  l_adv " << r.l_adv << "  l_g " << r.l_g
          << "  l_d " << r.l_d << "  (" << std::fixed << std::setprecision(1) << secs << "s)"
          << std::defaultfloat << std::setprecision(6) << std::endl;
    }
  };
  try {
    TrainResult result = train(healthy, gs, ds, tc, hooks);
    save_checkpoint(result.checkpoint, fs::path(cfg.out) / kCheckpointFile);
    result.log.write_csv(fs::path(cfg.out) / kTrainLogFile);
  } catch (const DivergenceError& e) {
    e.partial_log().write_csv(fs::path(cfg.out) / kTrainLogFile);
    throw;
  }
  log << "train: wrote " << (fs::path(cfg.out) / kCheckpointFile).string() << '\n';
}

namespace {

struct SegmentJob {
  std::string stem;
  Slice slice;
  std::optional<BinaryMask> truth;
};

std::vector<SegmentJob> segment_jobs(const RunConfig& cfg) {
  std::vector<SegmentJob> jobs;
  if (!cfg.input.empty()) {
    jobs.push_back({stem_of(cfg.input), load_slice(cfg.input), std::nullopt});
    return jobs;
  }
  if (cfg.data.empty()) throw UsageError("segment needs --input FILE or --data DIR");
  for (const auto& e : read_manifest(cfg.data)) {
    if (e.label != "anomalous") continue;
    SegmentJob job{stem_of(e.filename), load_slice(fs::path(cfg.data) / e.filename), std::nullopt};
    if (e.mask != "-") job.truth = mask_from_slice(load_slice(fs::path(cfg.data) / e.mask));
    jobs.push_back(std::move(job));
  }
  return jobs;
}

}  // namespace

void cmd_segment(const RunConfig& cfg, std::ostream& log) {
  apply_workers(cfg);
  std::optional<ModelCheckpoint> ckpt;
  std::unique_ptr<Reconstructor> recon;
  std::string digest = "identity-oracle";
  int net_w = 0, net_h = 0;
  if (cfg.reconstructor == "identity") {
    recon = std::make_unique<IdentityReconstructor>(cfg.resolved_gamma());
  } else {
    if (cfg.checkpoint.empty()) throw UsageError("segment needs --checkpoint PATH");
    ckpt.emplace(load_checkpoint(cfg.checkpoint));
    if (cfg.gamma && *cfg.gamma != ckpt->gamma) {
      throw ValueError("gamma mismatch: checkpoint was trained with gamma=" + std::to_string(ckpt->gamma) +
                       " but gamma=" + std::to_string(*cfg.gamma) + " was requested");
    }
    net_w = ckpt->generator.spec().width;
    net_h = ckpt->generator.spec().height;
    digest = hex_digest(checkpoint_file_digest(cfg.checkpoint));
    recon = std::make_unique<GeneratorReconstructor>(ckpt->generator, ckpt->gamma);
  }

  const HeatmapOptions hopt{cfg.k, cfg.batch_windows};
  const SegmentationParams sp = cfg.segmentation_params();
  ensure_dir(cfg.out);
  auto jobs = segment_jobs(cfg);
  for (auto& job : jobs) {
    if (ckpt && (job.slice.width() != net_w || job.slice.height() != net_h)) {
      job.slice = pad_to(job.slice, net_w, net_h);
      if (job.truth) job.truth = mask_from_slice(pad_to(mask_to_slice(*job.truth), net_w, net_h));
    }
    const SegmentOutcome o = segment_slice(job.slice, *recon, hopt, sp);
    const fs::path base = fs::path(cfg.out) / job.stem;
    save_heatmap(o.heatmap, base.string() + "_heatmap.pfm", recon->gamma(), cfg.k, digest);
    save_slice(mask_to_slice(o.prediction), base.string() + "_pred.png");
    save_rgb_png(render_panels(job.slice, o, job.truth ? &*job.truth : nullptr), base.string() + "_overlay.png");
    if (cfg.save_labels) {
      std::vector<std::uint16_t> labels(o.labels.labels.begin(), o.labels.labels.end());
      save_gray16_png(o.labels.width, o.labels.height, labels, base.string() + "_labels.png");
    }
    log << "segment: " << job.stem << ": heatmap from " << o.heatmap.window_count << " windows (gamma="
        << recon->gamma() << ", k=" << cfg.k << "), " << o.labels.count << " superpixels, predicted "
        << o.prediction.count() << " px";
    if (job.truth) log << ", dice " << dice(o.prediction, *job.truth);
    log << '\n';
  }
}

std::vector<EvaluationRow> cmd_evaluate(const RunConfig& cfg, std::ostream& log) {
  apply_workers(cfg);
  if (cfg.data.empty()) throw UsageError("evaluate needs --data DIR");
  const auto entries = read_manifest(cfg.data);
  std::vector<EvaluationRow> rows;

  if (cfg.mode == "segmentation") {
    if (cfg.pred_dir.empty()) throw UsageError("evaluate --mode segmentation needs --pred-dir DIR");
    for (const auto& e : entries) {
      if (e.label != "anomalous") continue;
      if (e.mask == "-") throw ValueError("anomalous entry " + e.filename + " has no ground-truth mask");
      const fs::path pred_path = fs::path(cfg.pred_dir) / (stem_of(e.filename) + "_pred.png");
      if (!fs::exists(pred_path)) throw ValueError("unpaired sample: no prediction " + pred_path.string());
      BinaryMask truth = mask_from_slice(load_slice(fs::path(cfg.data) / e.mask));
      const BinaryMask pred = mask_from_slice(load_slice(pred_path));
      if (pred.width() != truth.width() || pred.height() != truth.height()) {
        truth = mask_from_slice(pad_to(mask_to_slice(truth), pred.width(), pred.height()));
      }
      rows.push_back({stem_of(e.filename), dice(pred, truth), std::nullopt, std::nullopt});
    }
    if (rows.empty()) throw ValueError("no anomalous samples to evaluate in " + cfg.data);
  } else {
    if (cfg.checkpoint.empty()) throw UsageError("evaluate --mode healthy needs --checkpoint PATH");
    apply_workers(cfg);
    const ModelCheckpoint ckpt = load_checkpoint(cfg.checkpoint);
    const GeneratorSpec& gs = ckpt.generator.spec();
    std::mt19937_64 rng(cfg.seed);
    for (const auto& e : entries) {
      if (e.label != "normal") continue;
      Slice x = load_slice(fs::path(cfg.data) / e.filename);
      if (x.width() != gs.width || x.height() != gs.height) x = pad_to(x, gs.width, gs.height);
      const MaskWindow w = random_window(x.width(), x.height(), ckpt.gamma, rng);
      GeneratorReconstructor recon(ckpt.generator, ckpt.gamma);
      const Slice r = recon.reconstruct(x, std::span<const MaskWindow>(&w, 1)).front();
      rows.push_back({stem_of(e.filename), std::nullopt, psnr(x, r), ssim(x, r)});
    }
    if (rows.empty()) throw ValueError("no healthy samples to evaluate in " + cfg.data);
  }

  ensure_dir(cfg.out);
  const std::string csv = evaluation_csv(rows);
  std::ofstream out(fs::path(cfg.out) / kMetricsFile, std::ios::trunc);
  if (!out) throw IoError("cannot write " + (fs::path(cfg.out) / kMetricsFile).string());
  out << csv;

  auto summary = [&](const char* name, auto member) {
    std::vector<double> v;
    for (const auto& r : rows) {
      if (r.*member) v.push_back(*(r.*member));
    }
    if (v.empty()) return;
    const MetricReport rep = report(v);
    log << "evaluate: " << name << " " << std::fixed << std::setprecision(3) << rep.mean << " +/- " << rep.std
        << std::defaultfloat << " over " << v.size() << " samples\n";
  };
  summary("Dice", &EvaluationRow::dice);
  summary("PSNR", &EvaluationRow::psnr);
  summary("SSIM", &EvaluationRow::ssim);
  return rows;
}

}  // namespace inpaintseg
