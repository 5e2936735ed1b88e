// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

namespace noco {

/// Per-sample loss terms of one detection head. Background samples carry a
/// classification loss only; their reg_loss is semantically unused and should
/// be 0 in canonical inputs.
struct LossSample {
  bool is_foreground = false;
  int head_index = 0;
  double instance_weight = 1.0;  // > 0, applied to foreground samples
  double sigma_iou = 1.0;        // scale on the foreground classification term
  double cls_loss = 0.0;
  double reg_loss = 0.0;
};

/// High-quality-label weighted loss:
///   lambda / N_pos * sum_fg[ w * (sigma_iou * cls + reg) ] + 1 / N_reg * sum_bg[ cls ]
/// where N_pos and N_reg are the foreground and background sample counts. A
/// zero count leaves its term at zero. Throws EmptyInput when samples is
/// empty and InvalidParams when lambda <= 0.
double hpm_loss(std::span<const LossSample> samples, double lambda);

}  // namespace noco
