// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#include "noco/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <tuple>

#include "noco/kernels.hpp"

namespace noco {

namespace {

// Detection ranking: confidence descending, ties by start, end, input order.
std::vector<std::size_t> rank_order(std::span<const Instance> preds) {
  std::vector<std::size_t> order(preds.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const Instance& a = preds[i];
    const Instance& b = preds[j];
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    return std::tie(a.start, a.end) < std::tie(b.start, b.end);
  });
  return order;
}

// Index of the unmatched gt with the highest IoU at or above the threshold,
// first in input order on ties; npos when none qualifies.
std::size_t best_match(const Instance& pred, std::span<const Instance> gts,
                       const std::vector<bool>& matched, double threshold) {
  std::size_t best = static_cast<std::size_t>(-1);
  double best_iou = -1.0;
  for (std::size_t g = 0; g < gts.size(); ++g) {
    if (matched[g]) continue;
    const double overlap = iou(pred, gts[g]);
    if (overlap >= threshold && overlap > best_iou) {
      best = g;
      best_iou = overlap;
    }
  }
  return best;
}

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::size_t count_matches(std::span<const Instance> preds, std::span<const Instance> gts,
                          double threshold) {
  std::vector<bool> matched(gts.size(), false);
  std::size_t true_positives = 0;
  for (std::size_t i : rank_order(preds)) {
    const std::size_t g = best_match(preds[i], gts, matched, threshold);
    if (g == kNone) continue;
    matched[g] = true;
    ++true_positives;
  }
  return true_positives;
}

std::vector<Instance> label_instances(const OnlineLabelState& labels) {
  std::vector<Instance> out;
  out.reserve(labels.labels.size());
  for (const WeightedInstance& l : labels.labels) out.push_back(l.instance);
  return out;
}

}  // namespace

double average_precision(std::span<const Instance> preds, std::span<const Instance> gts,
                         double threshold) {
  if (gts.empty()) return 0.0;
  std::vector<bool> matched(gts.size(), false);
  double ap_sum = 0.0;
  std::size_t true_positives = 0;
  std::size_t rank = 0;
  for (std::size_t i : rank_order(preds)) {
    ++rank;
    const std::size_t g = best_match(preds[i], gts, matched, threshold);
    if (g == kNone) continue;
    matched[g] = true;
    ++true_positives;
    ap_sum += static_cast<double>(true_positives) / static_cast<double>(rank);
  }
  return ap_sum / static_cast<double>(gts.size());
}

double recall_at_threshold(std::span<const Instance> preds, std::span<const Instance> gts,
                           double threshold) {
  if (gts.empty()) return 0.0;
  return static_cast<double>(count_matches(preds, gts, threshold)) /
         static_cast<double>(gts.size());
}

EvalReport map_at(std::span<const Instance> preds, std::span<const Instance> gts,
                  std::span<const double> thresholds) {
  const VideoEval video{{preds.begin(), preds.end()}, {gts.begin(), gts.end()}};
  return evaluate_videos({&video, 1}, thresholds);
}

double miou(const OnlineLabelState& labels, std::span<const Instance> gts) {
  const VideoEval video{label_instances(labels), {gts.begin(), gts.end()}};
  return videos_miou({&video, 1});
}

double boundary_error(const OnlineLabelState& labels, std::span<const Instance> gts) {
  const VideoEval video{label_instances(labels), {gts.begin(), gts.end()}};
  return videos_boundary_error({&video, 1});
}

double videos_miou(std::span<const VideoEval> videos) {
  // Per class over all videos: mean best same-class IoU per gt instance.
  std::map<int, std::pair<double, std::size_t>> per_class;  // sum, count
  for (const VideoEval& video : videos) {
    for (const Instance& gt : video.gts) {
      double best = 0.0;
      for (const Instance& pred : video.preds) {
        if (pred.category != gt.category) continue;
        best = std::max(best, iou(pred, gt));
      }
      auto& [sum, count] = per_class[gt.category];
      sum += best;
      ++count;
    }
  }
  if (per_class.empty()) return 0.0;
  double class_mean_sum = 0.0;
  for (const auto& [category, acc] : per_class) {
    class_mean_sum += acc.first / static_cast<double>(acc.second);
  }
  return class_mean_sum / static_cast<double>(per_class.size());
}

double videos_recall(std::span<const VideoEval> videos, double threshold) {
  std::size_t matched_total = 0;
  std::size_t gt_total = 0;
  for (const VideoEval& video : videos) {
    std::set<int> classes;
    for (const Instance& gt : video.gts) classes.insert(gt.category);
    gt_total += video.gts.size();
    for (int category : classes) {
      std::vector<Instance> preds_c;
      std::vector<Instance> gts_c;
      for (const Instance& p : video.preds)
        if (p.category == category) preds_c.push_back(p);
      for (const Instance& g : video.gts)
        if (g.category == category) gts_c.push_back(g);
      matched_total += count_matches(preds_c, gts_c, threshold);
    }
  }
  if (gt_total == 0) return 0.0;
  return static_cast<double>(matched_total) / static_cast<double>(gt_total);
}

double videos_boundary_error(std::span<const VideoEval> videos) {
  // Greedy max-IoU matching per video within each class; matches below
  // IoU 0.1 are excluded.
  double error_sum = 0.0;
  std::size_t pair_count = 0;
  for (const VideoEval& video : videos) {
    struct Candidate {
      double overlap;
      std::size_t pred;
      std::size_t gt;
    };
    std::vector<Candidate> candidates;
    for (std::size_t p = 0; p < video.preds.size(); ++p) {
      for (std::size_t g = 0; g < video.gts.size(); ++g) {
        if (video.preds[p].category != video.gts[g].category) continue;
        const double overlap = iou(video.preds[p], video.gts[g]);
        if (overlap >= 0.1) candidates.push_back({overlap, p, g});
      }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      if (a.overlap != b.overlap) return a.overlap > b.overlap;
      return std::tie(a.pred, a.gt) < std::tie(b.pred, b.gt);
    });
    std::vector<bool> pred_used(video.preds.size(), false);
    std::vector<bool> gt_used(video.gts.size(), false);
    for (const Candidate& c : candidates) {
      if (pred_used[c.pred] || gt_used[c.gt]) continue;
      pred_used[c.pred] = true;
      gt_used[c.gt] = true;
      error_sum += 0.5 * (std::abs(video.preds[c.pred].start - video.gts[c.gt].start) +
                          std::abs(video.preds[c.pred].end - video.gts[c.gt].end));
      ++pair_count;
    }
  }
  if (pair_count == 0) return 0.0;
  return error_sum / static_cast<double>(pair_count);
}

EvalReport evaluate_videos(std::span<const VideoEval> videos,
                           std::span<const double> thresholds) {
  EvalReport report;

  std::set<int> classes;
  std::size_t gt_total = 0;
  for (const VideoEval& video : videos) {
    for (const Instance& gt : video.gts) classes.insert(gt.category);
    gt_total += video.gts.size();
  }

  for (double threshold : thresholds) {
    double ap_sum = 0.0;
    std::size_t matched_total = 0;
    for (int category : classes) {
      // Pool this class's detections across videos into one ranking; each
      // detection may only match ground truth from its own video.
      struct Pooled {
        Instance pred;
        std::size_t video;
      };
      std::vector<Pooled> pooled;
      std::vector<std::vector<Instance>> gts_by_video(videos.size());
      std::size_t class_gt_total = 0;
      for (std::size_t v = 0; v < videos.size(); ++v) {
        for (const Instance& p : videos[v].preds)
          if (p.category == category) pooled.push_back({p, v});
        for (const Instance& g : videos[v].gts)
          if (g.category == category) gts_by_video[v].push_back(g);
        class_gt_total += gts_by_video[v].size();
      }
      std::stable_sort(pooled.begin(), pooled.end(), [](const Pooled& a, const Pooled& b) {
        if (a.pred.confidence != b.pred.confidence) return a.pred.confidence > b.pred.confidence;
        return std::tie(a.pred.start, a.pred.end, a.video) <
               std::tie(b.pred.start, b.pred.end, b.video);
      });

      std::vector<std::vector<bool>> matched(videos.size());
      for (std::size_t v = 0; v < videos.size(); ++v)
        matched[v].assign(gts_by_video[v].size(), false);

      double ap = 0.0;
      std::size_t true_positives = 0;
      std::size_t rank = 0;
      for (const Pooled& entry : pooled) {
        ++rank;
        const std::size_t g =
            best_match(entry.pred, gts_by_video[entry.video], matched[entry.video], threshold);
        if (g == kNone) continue;
        matched[entry.video][g] = true;
        ++true_positives;
        ap += static_cast<double>(true_positives) / static_cast<double>(rank);
      }
      if (class_gt_total > 0) ap /= static_cast<double>(class_gt_total);
      ap_sum += ap;
      matched_total += true_positives;
    }
    report.map_per_threshold[threshold] =
        classes.empty() ? 0.0 : ap_sum / static_cast<double>(classes.size());
    report.recall_per_threshold[threshold] =
        gt_total == 0 ? 0.0 : static_cast<double>(matched_total) / static_cast<double>(gt_total);
  }

  if (!report.map_per_threshold.empty()) {
    double sum = 0.0;
    for (const auto& [threshold, value] : report.map_per_threshold) sum += value;
    report.average_map = sum / static_cast<double>(report.map_per_threshold.size());
  }
  report.miou = videos_miou(videos);
  report.mean_boundary_error = videos_boundary_error(videos);
  return report;
}

}  // namespace noco
