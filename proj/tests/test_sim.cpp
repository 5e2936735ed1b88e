// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "noco/errors.hpp"
#include "noco/kernels.hpp"
#include "noco/rng.hpp"
#include "noco/sim.hpp"

using namespace noco;

namespace {

SimulationConfig quiet_config() {
  SimulationConfig config;
  config.num_videos = 10;
  config.classes = 4;
  config.instances_min = 1;
  config.instances_max = 5;
  config.video_length = 100.0;
  config.min_gap = 2.0;
  config.duration_min = 4.0;
  config.duration_max = 8.0;
  config.rounds = 3;
  config.seed = 2024;
  return config;
}

}  // namespace

TEST_CASE("ground truth generation") {
  const SimulationConfig config = quiet_config();

  SUBCASE("deterministic for a fixed seed") {
    const auto a = gen_ground_truth(config, 5);
    const auto b = gen_ground_truth(config, 5);
    REQUIRE(a.size() == b.size());
    for (std::size_t v = 0; v < a.size(); ++v) {
      CHECK(a[v].video_id == b[v].video_id);
      CHECK(a[v].instances == b[v].instances);
    }
    const auto c = gen_ground_truth(config, 6);
    CHECK(a[0].instances != c[0].instances);
  }
  SUBCASE("structure invariants") {
    for (const auto& video : gen_ground_truth(config, 5)) {
      CHECK(video.instances.size() >= config.instances_min);
      CHECK(video.instances.size() <= config.instances_max);
      for (std::size_t i = 0; i < video.instances.size(); ++i) {
        const Instance& a = video.instances[i];
        CHECK(is_valid(a));
        CHECK(a.confidence == 1.0);
        CHECK(a.category >= 0);
        CHECK(a.category < config.classes);
        CHECK(a.start >= 0.0);
        CHECK(a.end <= config.video_length + 1e-9);
        CHECK(duration(a) >= config.duration_min - 1e-9);
        CHECK(duration(a) <= config.duration_max + 1e-9);
        if (i > 0) CHECK(a.start - video.instances[i - 1].end >= config.min_gap - 1e-9);
      }
    }
  }
  SUBCASE("zero instances per video") {
    SimulationConfig empty = config;
    empty.instances_min = 0;
    empty.instances_max = 0;
    for (const auto& video : gen_ground_truth(empty, 5)) CHECK(video.instances.empty());
  }
  SUBCASE("infeasible requests throw") {
    SimulationConfig tight = config;
    tight.video_length = 10.0;  // cannot hold 5 instances of up to 8 s
    CHECK_THROWS_AS(gen_ground_truth(tight, 5), InfeasibleConfig);
  }
}

TEST_CASE("noise injection") {
  const std::vector<Instance> gt{
      {0, 1.0, 0.0, 10.0}, {0, 1.0, 12.0, 20.0}, {1, 1.0, 40.0, 45.0}};

  SUBCASE("all-zero noise is the identity") {
    CHECK(inject_noise(gt, {}, 2.0, 7) == gt);
  }
  SUBCASE("drop rate one empties the set") {
    NoiseConfig noise;
    noise.drop_rate = 1.0;
    CHECK(inject_noise(gt, noise, 2.0, 7).empty());
  }
  SUBCASE("adjacent same-class pair merges to its hull") {
    NoiseConfig noise;
    noise.merge_rate = 1.0;
    const auto out = inject_noise(gt, noise, 2.0, 7);
    // [0,10] and [12,20] share a class and sit 2 s apart (< 2 * min_gap);
    // [40,45] has no adjacent same-class partner.
    REQUIRE(out.size() == 2);
    CHECK(out[0] == Instance{0, 1.0, 0.0, 20.0});
    CHECK(out[1] == gt[2]);
  }
  SUBCASE("distant same-class pairs never merge") {
    const std::vector<Instance> spread{{0, 1.0, 0.0, 10.0}, {0, 1.0, 30.0, 40.0}};
    NoiseConfig noise;
    noise.merge_rate = 1.0;
    CHECK(inject_noise(spread, noise, 2.0, 7) == spread);
  }
  SUBCASE("jitter keeps instances valid and is deterministic") {
    NoiseConfig noise;
    noise.boundary_jitter_sigma = 1.5;
    noise.confidence_noise_sigma = 0.2;
    const auto a = inject_noise(gt, noise, 2.0, 7);
    const auto b = inject_noise(gt, noise, 2.0, 7);
    CHECK(a == b);
    REQUIRE(a.size() == gt.size());
    for (const Instance& inst : a) CHECK(is_valid(inst));
    CHECK(a != gt);
  }
}

TEST_CASE("oracle teacher") {
  const SimulationConfig config = quiet_config();
  const std::vector<Instance> gt{{0, 1.0, 0.0, 10.0}, {1, 1.0, 40.0, 45.0}};

  SUBCASE("perfect fidelity reproduces the ground truth at confidence 1") {
    TeacherFidelity perfect;  // all zeros, floor 1.0
    const TeacherPrediction teacher = oracle_teacher(gt, perfect, config, 3, 1);
    REQUIRE(teacher.instances.size() == gt.size());
    for (std::size_t i = 0; i < gt.size(); ++i) {
      CHECK(teacher.instances[i].start == gt[i].start);
      CHECK(teacher.instances[i].end == gt[i].end);
      CHECK(teacher.instances[i].confidence == 1.0);
    }
  }
  SUBCASE("miss rate one empties the prediction") {
    TeacherFidelity blind;
    blind.miss_rate = 1.0;
    CHECK(oracle_teacher(gt, blind, config, 3, 1).instances.empty());
  }
  SUBCASE("deterministic per (seed, round), fresh across rounds") {
    TeacherFidelity fuzzy;
    fuzzy.boundary_sigma = 0.5;
    fuzzy.confidence_floor = 0.5;
    const auto a = oracle_teacher(gt, fuzzy, config, 3, 1);
    const auto b = oracle_teacher(gt, fuzzy, config, 3, 1);
    CHECK(a.instances == b.instances);
    const auto c = oracle_teacher(gt, fuzzy, config, 3, 2);
    CHECK(a.instances != c.instances);
  }
  SUBCASE("false positives are appended with valid shapes") {
    TeacherFidelity spurious;
    spurious.false_positive_rate = 5.0;
    spurious.confidence_floor = 0.8;
    const auto teacher = oracle_teacher(gt, spurious, config, 3, 1);
    CHECK(teacher.instances.size() >= gt.size());
    for (const Instance& inst : teacher.instances) {
      CHECK(is_valid(inst));
      CHECK(inst.confidence >= 0.8);
    }
  }
}

TEST_CASE("simulation fixed point under zero noise and a perfect teacher") {
  SimulationConfig config = quiet_config();
  config.teacher.confidence_floor = 1.0;
  const auto rows = run_simulation(config, 1);
  REQUIRE(rows.size() == static_cast<std::size_t>(config.rounds) + 1);
  for (const RoundMetrics& row : rows) {
    CHECK(row.miou == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(row.recall_0_5 == 1.0);
    CHECK(row.boundary_error == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(row.compensated == 0);
  }
}

TEST_CASE("jitter-only simulation follows the exact correction recursion") {
  // One video, one instance, jitter only, exact teacher. The trace must equal
  // the closed-form recursion of the normalized fusion: per round,
  //   boundary <- (a*w*boundary + (1-a)*truth) / (a*w + 1-a)
  //   w <- sqrt(exp(sqrt(iou)) * w)        (singleton association, beta = n)
  // seeded from the post-augmentation state (weight e for confidence-1 labels).
  SimulationConfig config = quiet_config();
  config.num_videos = 1;
  config.classes = 1;
  config.instances_min = 1;
  config.instances_max = 1;
  config.rounds = 6;
  config.noise.boundary_jitter_sigma = 0.4;

  const auto gt = gen_ground_truth(config, config.seed);
  REQUIRE(gt[0].instances.size() == 1);
  const Instance truth = gt[0].instances[0];
  const auto noisy =
      inject_noise(gt[0].instances, config.noise, config.min_gap,
                   video_seed(config.seed, gt[0].video_id, SeedStream::Noise));
  REQUIRE(noisy.size() == 1);

  const auto rows = run_simulation(config, 1);
  REQUIRE(rows.size() == 7);

  double start = noisy[0].start;
  double end = noisy[0].end;
  double weight = std::exp(1.0);
  const double alpha = config.params.alpha;
  for (std::size_t round = 0; round < rows.size(); ++round) {
    const double expected_error =
        0.5 * (std::abs(start - truth.start) + std::abs(end - truth.end));
    CHECK(rows[round].boundary_error == doctest::Approx(expected_error).epsilon(1e-9));
    CHECK(rows[round].labels == 1);

    const Instance label{0, 1.0, start, end};
    const double member_weight = std::exp(std::sqrt(iou(truth, label)));
    const double prior_coeff = alpha * weight;
    const double norm = prior_coeff + (1.0 - alpha);
    start = (prior_coeff * start + (1.0 - alpha) * truth.start) / norm;
    end = (prior_coeff * end + (1.0 - alpha) * truth.end) / norm;
    weight = std::sqrt(member_weight * weight);
  }

  for (std::size_t round = 1; round < rows.size(); ++round) {
    CHECK(rows[round].boundary_error < rows[round - 1].boundary_error + 1e-12);
  }
}

TEST_CASE("drop-only simulation recovers full recall in one round") {
  SimulationConfig config = quiet_config();
  config.num_videos = 20;
  config.rounds = 2;
  config.noise.drop_rate = 0.3;
  config.teacher.confidence_floor = 0.9;

  const auto rows = run_simulation(config, 1);
  CHECK(rows[0].recall_0_5 < 1.0);
  CHECK(rows[1].recall_0_5 == 1.0);
  CHECK(rows[1].compensated > 0);
  CHECK(rows[2].recall_0_5 == 1.0);
}

TEST_CASE("simulation trace is deterministic and thread-count independent") {
  SimulationConfig config = quiet_config();
  config.noise.boundary_jitter_sigma = 0.3;
  config.noise.drop_rate = 0.2;
  config.noise.merge_rate = 0.2;
  config.noise.confidence_noise_sigma = 0.05;
  config.teacher.boundary_sigma = 0.1;
  config.teacher.miss_rate = 0.1;
  config.teacher.false_positive_rate = 0.3;
  config.teacher.confidence_floor = 0.8;

  const auto a = run_simulation(config, 1);
  const auto b = run_simulation(config, 1);
  const auto c = run_simulation(config, 4);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == c.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].miou == b[i].miou);
    CHECK(a[i].miou == c[i].miou);
    CHECK(a[i].recall_0_5 == c[i].recall_0_5);
    CHECK(a[i].boundary_error == c[i].boundary_error);
    CHECK(a[i].labels == c[i].labels);
    CHECK(a[i].corrected == c[i].corrected);
    CHECK(a[i].compensated == c[i].compensated);
  }
}

TEST_CASE("enabling both correction stages beats either alone") {
  SimulationConfig config = quiet_config();
  config.num_videos = 30;
  config.rounds = 4;
  config.noise.boundary_jitter_sigma = 0.5;
  config.noise.drop_rate = 0.25;
  config.teacher.boundary_sigma = 0.05;
  config.teacher.confidence_floor = 0.9;

  SimulationConfig aic_only = config;
  aic_only.params.enable_mic = false;
  SimulationConfig mic_only = config;
  mic_only.params.enable_aic = false;

  const double full = run_simulation(config, 1).back().miou;
  const double aic = run_simulation(aic_only, 1).back().miou;
  const double mic = run_simulation(mic_only, 1).back().miou;
  CHECK(full >= aic);
  CHECK(full >= mic);
  CHECK(full > run_simulation(config, 1).front().miou);
}
