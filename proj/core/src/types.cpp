// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#include "noco/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "noco/errors.hpp"

namespace noco {

bool is_valid(const Instance& a) {
  return std::isfinite(a.start) && std::isfinite(a.end) && std::isfinite(a.confidence) &&
         a.end > a.start && a.category >= 0;
}

void OnlineLabelState::normalize() {
  std::stable_sort(labels.begin(), labels.end(),
                   [](const WeightedInstance& a, const WeightedInstance& b) {
                     return std::tie(a.instance.start, a.instance.end, a.instance.category) <
                            std::tie(b.instance.start, b.instance.end, b.instance.category);
                   });
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParams(what);
}

}  // namespace

void validate(const CorrectionParams& p) {
  require(std::isfinite(p.nms_threshold) && p.nms_threshold > 0.0 && p.nms_threshold < 1.0,
          "rho must be in (0,1)");
  require(std::isfinite(p.confidence_threshold), "psi must be finite");
  require(std::isfinite(p.iou_aug) && p.iou_aug >= 0.0 && p.iou_aug <= 1.0,
          "eta0 must be in [0,1]");
  require(std::isfinite(p.iou_correct) && p.iou_correct >= 0.0 && p.iou_correct <= 1.0,
          "eta1 must be in [0,1]");
  require(std::isfinite(p.iou_compensate) && p.iou_compensate >= 0.0 && p.iou_compensate <= 1.0,
          "eta2 must be in [0,1]");
  require(std::isfinite(p.alpha) && p.alpha >= 0.0 && p.alpha <= 1.0, "alpha must be in [0,1]");
  if (p.beta_mode == BetaMode::Fixed) {
    require(std::isfinite(p.beta) && p.beta > 0.0, "beta must be > 0");
  }
  require(std::isfinite(p.lambda) && p.lambda > 0.0, "lambda must be > 0");
}

}  // namespace noco
