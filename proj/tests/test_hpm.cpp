// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <vector>

#include "noco/errors.hpp"
#include "noco/hpm.hpp"

using namespace noco;

namespace {

LossSample fg(double weight, double sigma, double cls, double reg, int head = 0) {
  return {true, head, weight, sigma, cls, reg};
}

LossSample bg(double cls, int head = 0) { return {false, head, 1.0, 1.0, cls, 0.0}; }

}  // namespace

TEST_CASE("hpm_loss hand cases") {
  SUBCASE("one foreground sample, no background") {
    const std::vector<LossSample> samples{fg(1.0, 1.0, 0.2, 0.3)};
    CHECK(hpm_loss(samples, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("all-zero losses") {
    const std::vector<LossSample> samples{fg(2.0, 1.0, 0.0, 0.0), bg(0.0)};
    CHECK(hpm_loss(samples, 1.0) == 0.0);
  }
  SUBCASE("mixed foreground and background") {
    const std::vector<LossSample> samples{fg(2.0, 1.0, 0.1, 0.1), bg(0.3), bg(0.3)};
    CHECK(hpm_loss(samples, 1.0) == doctest::Approx(0.7).epsilon(1e-12));
  }
  SUBCASE("lambda scales only the foreground term") {
    const std::vector<LossSample> samples{fg(1.0, 1.0, 0.2, 0.3), bg(0.4)};
    CHECK(hpm_loss(samples, 2.0) == doctest::Approx(2.0 * 0.5 + 0.4).epsilon(1e-12));
  }
  SUBCASE("sigma scales only the classification part") {
    const std::vector<LossSample> samples{fg(1.0, 0.5, 0.2, 0.3)};
    CHECK(hpm_loss(samples, 1.0) == doctest::Approx(0.5 * 0.2 + 0.3).epsilon(1e-12));
  }
  SUBCASE("background-only input") {
    const std::vector<LossSample> samples{bg(0.3), bg(0.5)};
    CHECK(hpm_loss(samples, 1.0) == doctest::Approx(0.4).epsilon(1e-12));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(hpm_loss({}, 1.0), EmptyInput);
    const std::vector<LossSample> samples{bg(0.3)};
    CHECK_THROWS_AS(hpm_loss(samples, 0.0), InvalidParams);
    CHECK_THROWS_AS(hpm_loss(samples, -1.0), InvalidParams);
  }
}

TEST_CASE("hpm_loss properties") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.1, 3.0);

  auto random_samples = [&](std::size_t n) {
    std::vector<LossSample> samples;
    for (std::size_t i = 0; i < n; ++i) {
      if (unit(rng) < 0.5) {
        samples.push_back(fg(weight(rng), unit(rng) * 2.0, unit(rng), unit(rng),
                             static_cast<int>(i % 3)));
      } else {
        samples.push_back(bg(unit(rng), static_cast<int>(i % 3)));
      }
    }
    return samples;
  };

  SUBCASE("increasing any loss component never decreases the output") {
    for (int trial = 0; trial < 200; ++trial) {
      auto samples = random_samples(1 + rng() % 10);
      const double base = hpm_loss(samples, 1.5);
      auto& victim = samples[rng() % samples.size()];
      if (unit(rng) < 0.5) victim.cls_loss += unit(rng);
      else if (victim.is_foreground) victim.reg_loss += unit(rng);
      else victim.cls_loss += unit(rng);
      CHECK(hpm_loss(samples, 1.5) >= base - 1e-12);
    }
  }
  SUBCASE("doubling every foreground weight doubles the foreground term") {
    for (int trial = 0; trial < 200; ++trial) {
      auto samples = random_samples(1 + rng() % 10);
      std::vector<LossSample> background_only;
      for (const LossSample& s : samples)
        if (!s.is_foreground) background_only.push_back(s);
      const double bg_term =
          background_only.empty() ? 0.0 : hpm_loss(background_only, 1.0);
      const double base = hpm_loss(samples, 1.0);
      for (LossSample& s : samples)
        if (s.is_foreground) s.instance_weight *= 2.0;
      const double doubled = hpm_loss(samples, 1.0);
      CHECK(doubled - bg_term == doctest::Approx(2.0 * (base - bg_term)).epsilon(1e-9));
    }
  }
  SUBCASE("permutation invariance") {
    for (int trial = 0; trial < 100; ++trial) {
      auto samples = random_samples(2 + rng() % 10);
      const double base = hpm_loss(samples, 1.0);
      std::shuffle(samples.begin(), samples.end(), rng);
      CHECK(hpm_loss(samples, 1.0) == doctest::Approx(base).epsilon(1e-12));
    }
  }
}
