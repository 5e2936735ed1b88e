// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#include "noco/cala.hpp"

#include <cmath>
#include <utility>

#include "noco/errors.hpp"
#include "noco/kernels.hpp"

namespace noco {

double adaptive_weight(const Instance& candidate, const Instance& anchor) {
  return std::exp(std::sqrt(iou(candidate, anchor) * clamp01(candidate.confidence)));
}

AssociationSet associate(const Instance& anchor, std::span<const Instance> pool, double eta) {
  AssociationSet assoc;
  assoc.anchor = anchor;
  for (const Instance& candidate : pool) {
    if (candidate.category != anchor.category) continue;
    if (iou(candidate, anchor) <= eta) continue;
    assoc.members.emplace_back(candidate, adaptive_weight(candidate, anchor));
  }
  return assoc;
}

WeightedInstance fuse_augmented(const AssociationSet& assoc) {
  if (assoc.members.empty()) throw EmptyAssociation();

  double weight_sum = 0.0;
  double start_sum = 0.0;
  double end_sum = 0.0;
  double log_weight_sum = 0.0;
  for (const auto& [member, w] : assoc.members) {
    weight_sum += w;
    start_sum += w * member.start;
    end_sum += w * member.end;
    log_weight_sum += std::log(w);
  }

  WeightedInstance fused;
  fused.instance.category = assoc.anchor.category;
  fused.instance.confidence = assoc.anchor.confidence;
  if (assoc.members.size() == 1) {
    // w*s/w is not exactly s in floating point; a singleton mean is the member.
    fused.instance.start = assoc.members.front().first.start;
    fused.instance.end = assoc.members.front().first.end;
  } else {
    fused.instance.start = start_sum / weight_sum;
    fused.instance.end = end_sum / weight_sum;
  }
  // Geometric mean in log space; member weights in [1, e] keep it there.
  fused.weight = std::exp(log_weight_sum / static_cast<double>(assoc.members.size()));
  return fused;
}

OnlineLabelState cala(std::span<const Instance> predictions, const CorrectionParams& params,
                      std::string video_id) {
  OnlineLabelState state;
  state.video_id = std::move(video_id);

  const std::vector<Instance> filtered =
      confidence_filter(predictions, params.confidence_threshold);
  // Anchors are the NMS survivors; the association pool is the raw input, so
  // context below the confidence gate still contributes.
  for (const Instance& anchor : nms_keep(filtered, params.nms_threshold, params.nms_scope)) {
    AssociationSet assoc = associate(anchor, predictions, params.iou_aug);
    if (assoc.members.empty()) continue;
    state.labels.push_back(fuse_augmented(assoc));
  }
  state.normalize();
  return state;
}

}  // namespace noco
