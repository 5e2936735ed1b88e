// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "noco/cala.hpp"
#include "noco/types.hpp"

namespace noco {

/// One teacher output for a video; confidences are stored on the instances.
struct TeacherPrediction {
  std::vector<Instance> instances;
};

/// Observability record of one correction round.
struct RoundTrace {
  int round_index = 0;
  std::size_t corrected_count = 0;
  std::size_t compensated_count = 0;
  OnlineLabelState state_after;
};

/// Corrected boundary fusion. Per boundary, with M the weighted mean of the
/// member boundaries and w the prior's weight:
///   Literal:     alpha * w * prior + (1 - alpha) * M
///   Normalized:  (alpha * w * prior + (1 - alpha) * M) / (alpha * w + (1 - alpha))
/// Normalized mode maps an exact-match association onto the prior itself.
/// The fused weight is the geometric mean of the member weights with the
/// prior's weight counted beta times: ((prod w_i) * w^beta)^(1/(n+beta)).
/// Category and confidence are carried from the prior.
/// Throws EmptyAssociation when there are no members; throws DegenerateResult
/// if literal mode yields end <= start (cannot happen for in-range inputs,
/// guarded against floating-point collapse of tiny durations).
WeightedInstance fuse_corrected(const WeightedInstance& prior, const AssociationSet& assoc,
                                double alpha, double beta, FusionMode mode);

/// Ambiguous-instance correction. Each label's association set holds the
/// teacher instances of the same category with IoU above iou_correct and
/// confidence above confidence_threshold; labels with support are replaced by
/// their fused correction, the rest are kept unchanged. Label count and
/// positions are preserved; a label hit by DegenerateResult is kept unfused.
/// Returns the new state and the number of corrected labels.
std::pair<OnlineLabelState, std::size_t> aic_correct(const OnlineLabelState& state,
                                                     const TeacherPrediction& teacher,
                                                     const CorrectionParams& params);

/// exp(clamp01(confidence)); the weight of a compensated instance, in [1, e].
double compensation_weight(double confidence);

/// Missing-instance compensation. Teacher instances above the confidence
/// threshold are suppressed with NMS; every kept candidate whose maximum IoU
/// against the pre-existing labels is strictly below iou_compensate is
/// appended (category-agnostic gate; the max over an empty state is 0).
/// Existing labels are never touched. Returns the new state and the number of
/// appended labels.
std::pair<OnlineLabelState, std::size_t> mic_compensate(const OnlineLabelState& state,
                                                        const TeacherPrediction& teacher,
                                                        const CorrectionParams& params);

/// One online round: correction, then compensation, then canonical re-sort.
/// Stages disabled in params are skipped.
RoundTrace run_round(const OnlineLabelState& state, const TeacherPrediction& teacher,
                     const CorrectionParams& params, int round_index = 0);

}  // namespace noco
