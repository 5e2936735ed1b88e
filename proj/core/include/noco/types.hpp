// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace noco {

/// One action proposal or label on a video timeline. Times are seconds;
/// callers working in frame indices must convert first. Confidence is an
/// unbounded score and is clamped to [0,1] only where a formula requires it.
struct Instance {
  int category = 0;
  double confidence = 0.0;
  double start = 0.0;
  double end = 0.0;

  friend bool operator==(const Instance&, const Instance&) = default;
};

inline double duration(const Instance& a) { return a.end - a.start; }

// end > start, all fields finite, category non-negative.
bool is_valid(const Instance& a);

/// An instance plus its optimization weight. Weights produced by the
/// correction formulas lie in [1, e].
struct WeightedInstance {
  Instance instance;
  double weight = 1.0;

  friend bool operator==(const WeightedInstance&, const WeightedInstance&) = default;
};

/// The per-video online pseudo-label set with its weights. Canonical order
/// is (start, end, category) ascending; normalize() restores it after the
/// correction stages have moved boundaries or appended labels.
struct OnlineLabelState {
  std::string video_id;
  std::vector<WeightedInstance> labels;

  void normalize();

  friend bool operator==(const OnlineLabelState&, const OnlineLabelState&) = default;
};

enum class NmsScope { PerClass, Global };
enum class FusionMode { Normalized, Literal };
enum class BetaMode { EqualToN, Fixed };

/// Hyperparameters of the correction pipeline. Field comments give the short
/// names used by the config file (params.*) and the sweep command.
struct CorrectionParams {
  double nms_threshold = 0.45;        // rho, in (0,1)
  double confidence_threshold = 0.1;  // psi; all confidence gates are strict >
  double iou_aug = 0.4;               // eta0, association gate for augmentation
  double iou_correct = 0.4;           // eta1, association gate for correction
  double iou_compensate = 0.1;        // eta2, max-IoU ceiling for compensation
  double alpha = 0.5;                 // prior-vs-context mix, in [0,1]
  BetaMode beta_mode = BetaMode::EqualToN;
  double beta = 1.0;                  // prior anchoring exponent when beta_mode == Fixed
  double lambda = 1.0;                // positive-sample loss weight, > 0
  FusionMode fusion = FusionMode::Normalized;
  NmsScope nms_scope = NmsScope::PerClass;
  bool enable_aic = true;
  bool enable_mic = true;

  friend bool operator==(const CorrectionParams&, const CorrectionParams&) = default;
};

// Throws InvalidParams when any field is outside its documented range.
void validate(const CorrectionParams& params);

}  // namespace noco
