// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <span>
#include <vector>

#include "noco/types.hpp"

namespace noco {

struct EvalReport {
  std::map<double, double> map_per_threshold;
  double average_map = 0.0;
  double miou = 0.0;
  std::map<double, double> recall_per_threshold;
  double mean_boundary_error = 0.0;
};

/// Single-category average precision. Predictions are ranked by confidence
/// descending (ties by start, then end, then input order); each is greedily
/// matched to the unmatched ground truth with the highest IoU at or above the
/// threshold. Interpolation-free: AP is the sum of precisions at the
/// true-positive ranks divided by |gts|. 0 when gts is empty.
double average_precision(std::span<const Instance> preds, std::span<const Instance> gts,
                         double threshold);

/// Fraction of ground truths matched at the threshold under the same greedy
/// confidence-ordered matching (single category).
double recall_at_threshold(std::span<const Instance> preds, std::span<const Instance> gts,
                           double threshold);

/// Detection mAP over the classes present in gts: per threshold, the mean of
/// per-class AP; average_map is the mean over thresholds. Also fills the
/// recall map (matched gts over total gts, pooled across classes).
EvalReport map_at(std::span<const Instance> preds, std::span<const Instance> gts,
                  std::span<const double> thresholds);

/// Pseudo-label quality: per class present in gts, the mean over that class's
/// ground truths of the best IoU against any same-class label, averaged over
/// classes. Classes with no labels score 0.
double miou(const OnlineLabelState& labels, std::span<const Instance> gts);

/// Mean of (|start error| + |end error|) / 2 over greedily matched
/// same-class pairs, highest IoU first; pairs below IoU 0.1 never match.
/// 0 when nothing matches.
double boundary_error(const OnlineLabelState& labels, std::span<const Instance> gts);

/// One evaluation unit: predictions and ground truth of a single video.
struct VideoEval {
  std::vector<Instance> preds;
  std::vector<Instance> gts;
};

/// Dataset-level report. AP pools the per-class rankings across videos and
/// matches within each video; mIoU pools each class's ground truths across
/// videos; recall and boundary error are micro-averaged over all videos.
EvalReport evaluate_videos(std::span<const VideoEval> videos, std::span<const double> thresholds);

double videos_miou(std::span<const VideoEval> videos);
double videos_recall(std::span<const VideoEval> videos, double threshold);
double videos_boundary_error(std::span<const VideoEval> videos);

}  // namespace noco
