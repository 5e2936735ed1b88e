// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "noco/types.hpp"

namespace noco {

/// Temporal intersection-over-union of two instances. Categories are ignored
/// by this kernel; 0 for disjoint intervals, 1 for identical ones.
double iou(const Instance& a, const Instance& b);

inline double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

/// Instances with confidence strictly above psi, input order preserved.
std::vector<Instance> confidence_filter(std::span<const Instance> pool, double psi);

/// Greedy non-maximum suppression. Candidates are visited by confidence
/// descending (ties: start, end, category ascending); each kept candidate
/// discards every remaining one whose IoU with it exceeds rho. PerClass scope
/// suppresses only within a category. Returns indices into `pool` in keep
/// order.
std::vector<std::size_t> nms(std::span<const Instance> pool, double rho, NmsScope scope);

/// Kept instances themselves, in keep order.
std::vector<Instance> nms_keep(std::span<const Instance> pool, double rho, NmsScope scope);

}  // namespace noco
