// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "noco/kernels.hpp"

#include "generators.hpp"

using namespace noco;

TEST_CASE("iou hand cases") {
  const Instance a{0, 1.0, 0.0, 10.0};
  CHECK(iou(a, a) == 1.0);
  CHECK(iou(a, {0, 1.0, 20.0, 30.0}) == 0.0);
  CHECK(iou(a, {0, 1.0, 5.0, 15.0}) == doctest::Approx(5.0 / 15.0).epsilon(1e-12));
  // Touching intervals do not overlap.
  CHECK(iou(a, {0, 1.0, 10.0, 20.0}) == 0.0);
  // Categories are ignored by the kernel.
  CHECK(iou({3, 1.0, 0.0, 10.0}, {7, 1.0, 0.0, 10.0}) == 1.0);
}

TEST_CASE("iou symmetry, range and identity over random pairs") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    const Instance a = test::random_instance(rng);
    const Instance b = test::random_instance(rng);
    const double ab = iou(a, b);
    CHECK(ab == iou(b, a));
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    CHECK(iou(a, a) == 1.0);
    if (a.end <= b.start || b.end <= a.start) CHECK(ab == 0.0);
  }
}

TEST_CASE("clamp01") {
  CHECK(clamp01(0.7) == 0.7);
  CHECK(clamp01(-3.0) == 0.0);
  CHECK(clamp01(1.5) == 1.0);
  CHECK(clamp01(0.0) == 0.0);
  CHECK(clamp01(1.0) == 1.0);
}

TEST_CASE("confidence filter keeps strict exceedances in order") {
  const std::vector<Instance> pool{
      {0, 0.05, 0.0, 1.0}, {0, 0.1, 2.0, 3.0}, {0, 0.2, 4.0, 5.0}};
  const auto kept = confidence_filter(pool, 0.1);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].confidence == 0.2);

  CHECK(confidence_filter({}, 0.1).empty());
  CHECK(confidence_filter(pool, -1e30).size() == pool.size());
}

TEST_CASE("confidence filter is monotone in the threshold") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pool = test::random_pool(rng, 30);
    std::uniform_real_distribution<double> thresh(-0.5, 1.5);
    double lo = thresh(rng);
    double hi = thresh(rng);
    if (lo > hi) std::swap(lo, hi);
    const auto loose = confidence_filter(pool, lo);
    const auto strict = confidence_filter(pool, hi);
    // Every instance surviving the stricter threshold survives the looser one.
    std::size_t li = 0;
    for (const Instance& s : strict) {
      while (li < loose.size() && !(loose[li] == s)) ++li;
      REQUIRE(li < loose.size());
      ++li;
    }
  }
}

TEST_CASE("nms hand cases") {
  SUBCASE("overlapping same-class pair keeps the stronger") {
    const std::vector<Instance> pool{{1, 0.9, 0.0, 10.0}, {1, 0.8, 1.0, 11.0}};
    // IoU 9/11 > 0.45 suppresses the weaker instance.
    const auto kept = nms(pool, 0.45, NmsScope::PerClass);
    REQUIRE(kept == std::vector<std::size_t>{0});
  }
  SUBCASE("disjoint instances both survive") {
    const std::vector<Instance> pool{{1, 0.9, 0.0, 10.0}, {1, 0.8, 20.0, 30.0}};
    CHECK(nms(pool, 0.45, NmsScope::PerClass).size() == 2);
  }
  SUBCASE("single instance is kept") {
    const std::vector<Instance> pool{{1, 0.9, 0.0, 10.0}};
    CHECK(nms(pool, 0.45, NmsScope::PerClass) == std::vector<std::size_t>{0});
  }
  SUBCASE("per-class scope never suppresses across categories") {
    const std::vector<Instance> pool{{1, 0.9, 0.0, 10.0}, {2, 0.8, 0.0, 10.0}};
    CHECK(nms(pool, 0.45, NmsScope::PerClass).size() == 2);
    CHECK(nms(pool, 0.45, NmsScope::Global).size() == 1);
  }
}

TEST_CASE("nms post-condition, idempotence and permutation determinism") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    auto pool = test::random_pool(rng, 25);
    const double rho = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    const NmsScope scope = trial % 2 == 0 ? NmsScope::PerClass : NmsScope::Global;

    const auto kept = nms_keep(pool, rho, scope);
    for (std::size_t i = 0; i < kept.size(); ++i) {
      for (std::size_t j = i + 1; j < kept.size(); ++j) {
        if (scope == NmsScope::PerClass && kept[i].category != kept[j].category) continue;
        CHECK(iou(kept[i], kept[j]) <= rho);
      }
    }

    const auto again = nms(kept, rho, scope);
    CHECK(again.size() == kept.size());

    std::shuffle(pool.begin(), pool.end(), rng);
    auto kept_shuffled = nms_keep(pool, rho, scope);
    auto sort_key = [](const Instance& a, const Instance& b) {
      return std::tie(a.start, a.end, a.category, a.confidence) <
             std::tie(b.start, b.end, b.category, b.confidence);
    };
    std::sort(kept_shuffled.begin(), kept_shuffled.end(), sort_key);
    auto kept_sorted = kept;
    std::sort(kept_sorted.begin(), kept_sorted.end(), sort_key);
    CHECK(kept_shuffled == kept_sorted);
  }
}
