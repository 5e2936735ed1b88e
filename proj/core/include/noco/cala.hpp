// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "noco/types.hpp"

namespace noco {

/// The context instances backing one anchor, each with its adaptive weight.
struct AssociationSet {
  Instance anchor;
  std::vector<std::pair<Instance, double>> members;
};

/// Adaptive weight of a context instance relative to an anchor:
/// exp(sqrt(iou(candidate, anchor) * clamp01(candidate.confidence))).
/// Always in [1, e].
double adaptive_weight(const Instance& candidate, const Instance& anchor);

/// All pool instances sharing the anchor's category whose IoU with the anchor
/// strictly exceeds eta, paired with their adaptive weights. The anchor
/// self-associates when it is present in the pool (IoU 1).
AssociationSet associate(const Instance& anchor, std::span<const Instance> pool, double eta);

/// Weighted mean of the member boundaries; the fused weight is the geometric
/// mean of the member weights. Category and confidence are carried from the
/// anchor. Throws EmptyAssociation when there are no members.
WeightedInstance fuse_augmented(const AssociationSet& assoc);

/// Context-aware label augmentation: filter by confidence, suppress with NMS,
/// then fuse every kept anchor with its association set drawn from the full
/// unfiltered pool. The result is in canonical (start, end, category) order.
OnlineLabelState cala(std::span<const Instance> predictions, const CorrectionParams& params,
                      std::string video_id = {});

}  // namespace noco
