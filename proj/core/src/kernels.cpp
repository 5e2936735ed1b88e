// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#include "noco/kernels.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace noco {

double iou(const Instance& a, const Instance& b) {
  const double inter = std::min(a.end, b.end) - std::max(a.start, b.start);
  if (inter <= 0.0) return 0.0;
  // Durations are strictly positive, so the union cannot vanish.
  const double uni = duration(a) + duration(b) - inter;
  return inter / uni;
}

std::vector<Instance> confidence_filter(std::span<const Instance> pool, double psi) {
  std::vector<Instance> kept;
  kept.reserve(pool.size());
  for (const Instance& p : pool) {
    if (p.confidence > psi) kept.push_back(p);
  }
  return kept;
}

std::vector<std::size_t> nms(std::span<const Instance> pool, double rho, NmsScope scope) {
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const Instance& a = pool[i];
    const Instance& b = pool[j];
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    return std::tie(a.start, a.end, a.category) < std::tie(b.start, b.end, b.category);
  });

  std::vector<std::size_t> kept;
  std::vector<bool> suppressed(pool.size(), false);
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const std::size_t i = order[rank];
    if (suppressed[i]) continue;
    kept.push_back(i);
    for (std::size_t later = rank + 1; later < order.size(); ++later) {
      const std::size_t j = order[later];
      if (suppressed[j]) continue;
      if (scope == NmsScope::PerClass && pool[i].category != pool[j].category) continue;
      if (iou(pool[i], pool[j]) > rho) suppressed[j] = true;
    }
  }
  return kept;
}

std::vector<Instance> nms_keep(std::span<const Instance> pool, double rho, NmsScope scope) {
  std::vector<Instance> kept;
  for (std::size_t i : nms(pool, rho, scope)) kept.push_back(pool[i]);
  return kept;
}

}  // namespace noco
