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

#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "inpaintseg/config.hpp"
#include "inpaintseg/image_io.hpp"
#include "inpaintseg/localization.hpp"
#include "inpaintseg/metrics.hpp"
#include "inpaintseg/superpixel.hpp"

namespace inpaintseg {

/// Output of the localization + refinement stages for one slice.
struct SegmentOutcome {
  Heatmap heatmap;
  LabelMap labels;
  BinaryMask prediction;
};

SegmentOutcome segment_slice(const Slice& slice, const Reconstructor& reconstructor, const HeatmapOptions& options,
                             const SegmentationParams& params);

/// Side-by-side strip: query, heatmap, superpixel boundaries, overlay, prediction and
/// (when given) ground truth.
RgbImage render_panels(const Slice& query, const SegmentOutcome& outcome, const BinaryMask* truth);

struct EvaluationRow {
  std::string id;
  std::optional<double> dice;
  std::optional<double> psnr;
  std::optional<double> ssim;
};

/// CSV with header "id,dice,psnr,ssim", one row per sample, then "mean" and "std" rows.
/// Missing values are written as "-".
std::string evaluation_csv(const std::vector<EvaluationRow>& rows);

// Each command writes its artifacts under cfg.out and logs to `log`. They throw on
// failure; the CLI maps UsageError to exit code 1 and every other error to 2.
void cmd_synth(const RunConfig& cfg, std::ostream& log);
void cmd_train(const RunConfig& cfg, std::ostream& log);
void cmd_segment(const RunConfig& cfg, std::ostream& log);
std::vector<EvaluationRow> cmd_evaluate(const RunConfig& cfg, std::ostream& log);

/// Applies cfg.workers to the OpenMP runtime.
void apply_workers(const RunConfig& cfg);

inline constexpr const char* kCheckpointFile = "checkpoint.bin";
inline constexpr const char* kTrainLogFile = "train_log.csv";
inline constexpr const char* kMetricsFile = "metrics.csv";

}  // namespace inpaintseg
