// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#include "noco/hpm.hpp"

#include <cmath>

#include "noco/errors.hpp"

namespace noco {

double hpm_loss(std::span<const LossSample> samples, double lambda) {
  if (samples.empty()) throw EmptyInput("hpm_loss needs at least one sample");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidParams("lambda must be > 0");

  double fg_sum = 0.0;
  double bg_sum = 0.0;
  std::size_t fg_count = 0;
  std::size_t bg_count = 0;
  for (const LossSample& s : samples) {
    if (s.is_foreground) {
      fg_sum += s.instance_weight * (s.sigma_iou * s.cls_loss + s.reg_loss);
      ++fg_count;
    } else {
      bg_sum += s.cls_loss;
      ++bg_count;
    }
  }
  const double fg_norm = fg_count > 0 ? static_cast<double>(fg_count) : 1.0;
  const double bg_norm = bg_count > 0 ? static_cast<double>(bg_count) : 1.0;
  return lambda / fg_norm * fg_sum + 1.0 / bg_norm * bg_sum;
}

}  // namespace noco
