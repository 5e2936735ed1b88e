// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#include "noco/online.hpp"

#include <algorithm>
#include <cmath>

#include "noco/errors.hpp"
#include "noco/kernels.hpp"

namespace noco {

WeightedInstance fuse_corrected(const WeightedInstance& prior, const AssociationSet& assoc,
                                double alpha, double beta, FusionMode mode) {
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
  // A singleton mean is the member itself; w*s/w would round.
  const bool single = assoc.members.size() == 1;
  const double context_start = single ? assoc.members.front().first.start
                                      : start_sum / weight_sum;
  const double context_end = single ? assoc.members.front().first.end : end_sum / weight_sum;

  const double prior_coeff = alpha * prior.weight;
  const double context_coeff = 1.0 - alpha;

  WeightedInstance fused;
  fused.instance.category = prior.instance.category;
  fused.instance.confidence = prior.instance.confidence;
  fused.instance.start = prior_coeff * prior.instance.start + context_coeff * context_start;
  fused.instance.end = prior_coeff * prior.instance.end + context_coeff * context_end;
  if (mode == FusionMode::Normalized) {
    const double norm = prior_coeff + context_coeff;
    fused.instance.start /= norm;
    fused.instance.end /= norm;
  }
  if (fused.instance.end <= fused.instance.start) {
    throw DegenerateResult("corrected instance has end <= start");
  }

  const double n = static_cast<double>(assoc.members.size());
  fused.weight = std::exp((log_weight_sum + beta * std::log(prior.weight)) / (n + beta));
  return fused;
}

std::pair<OnlineLabelState, std::size_t> aic_correct(const OnlineLabelState& state,
                                                     const TeacherPrediction& teacher,
                                                     const CorrectionParams& params) {
  OnlineLabelState corrected = state;
  std::size_t corrected_count = 0;

  for (WeightedInstance& label : corrected.labels) {
    AssociationSet assoc;
    assoc.anchor = label.instance;
    for (const Instance& support : teacher.instances) {
      if (support.category != label.instance.category) continue;
      if (iou(support, label.instance) <= params.iou_correct) continue;
      if (support.confidence <= params.confidence_threshold) continue;
      assoc.members.emplace_back(support, adaptive_weight(support, label.instance));
    }
    if (assoc.members.empty()) continue;

    const double beta = params.beta_mode == BetaMode::EqualToN
                            ? static_cast<double>(assoc.members.size())
                            : params.beta;
    try {
      label = fuse_corrected(label, assoc, params.alpha, beta, params.fusion);
      ++corrected_count;
    } catch (const DegenerateResult&) {
      // Keep the label unfused.
    }
  }
  return {std::move(corrected), corrected_count};
}

double compensation_weight(double confidence) { return std::exp(clamp01(confidence)); }

std::pair<OnlineLabelState, std::size_t> mic_compensate(const OnlineLabelState& state,
                                                        const TeacherPrediction& teacher,
                                                        const CorrectionParams& params) {
  OnlineLabelState compensated = state;
  std::size_t appended = 0;

  const std::vector<Instance> filtered =
      confidence_filter(teacher.instances, params.confidence_threshold);
  for (const Instance& candidate :
       nms_keep(filtered, params.nms_threshold, params.nms_scope)) {
    // Category-agnostic gate against the pre-existing labels only; the max
    // over an empty state is 0, so a cold start accepts every candidate.
    double max_iou = 0.0;
    for (const WeightedInstance& label : state.labels) {
      max_iou = std::max(max_iou, iou(candidate, label.instance));
    }
    if (max_iou < params.iou_compensate) {
      compensated.labels.push_back({candidate, compensation_weight(candidate.confidence)});
      ++appended;
    }
  }
  return {std::move(compensated), appended};
}

RoundTrace run_round(const OnlineLabelState& state, const TeacherPrediction& teacher,
                     const CorrectionParams& params, int round_index) {
  RoundTrace trace;
  trace.round_index = round_index;

  OnlineLabelState next = state;
  if (params.enable_aic) {
    std::tie(next, trace.corrected_count) = aic_correct(next, teacher, params);
  }
  if (params.enable_mic) {
    std::tie(next, trace.compensated_count) = mic_compensate(next, teacher, params);
  }
  next.normalize();
  trace.state_after = std::move(next);
  return trace;
}

}  // namespace noco
