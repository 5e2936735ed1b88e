// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "noco/online.hpp"
#include "noco/types.hpp"

namespace noco {

/// The three label-noise failure modes plus confidence perturbation.
struct NoiseConfig {
  double boundary_jitter_sigma = 0.0;    // additive gaussian on each boundary, seconds
  double drop_rate = 0.0;                // instance deletion probability
  double merge_rate = 0.0;               // adjacent same-class pair replaced by its hull
  double confidence_noise_sigma = 0.0;

  friend bool operator==(const NoiseConfig&, const NoiseConfig&) = default;
};

/// Stand-in for the neural teacher: ground truth perturbed at a configurable
/// fidelity, redrawn independently every round.
struct TeacherFidelity {
  double boundary_sigma = 0.0;       // seconds
  double miss_rate = 0.0;            // per-instance drop probability
  double false_positive_rate = 0.0;  // expected spurious instances per video
  double confidence_floor = 1.0;     // confidences drawn from [floor, 1]

  friend bool operator==(const TeacherFidelity&, const TeacherFidelity&) = default;
};

struct SimulationConfig {
  std::size_t num_videos = 50;
  int classes = 10;
  std::size_t instances_min = 2;
  std::size_t instances_max = 6;
  double video_length = 120.0;  // seconds
  double min_gap = 2.0;         // minimum separation between ground-truth instances
  double duration_min = 4.0;
  double duration_max = 8.0;
  int rounds = 5;
  std::uint64_t seed = 1;
  NoiseConfig noise;
  TeacherFidelity teacher;
  CorrectionParams params;

  friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

struct VideoGroundTruth {
  std::string video_id;
  std::vector<Instance> instances;
};

/// Non-overlapping instances separated by at least min_gap, counts within the
/// configured range, confidence 1.0, categories uniform over [0, classes).
/// Throws InfeasibleConfig when the worst-case draw cannot fit in
/// video_length. Deterministic in (config, seed).
std::vector<VideoGroundTruth> gen_ground_truth(const SimulationConfig& config, std::uint64_t seed);

/// Applies merge (hull of adjacent same-class pairs closer than 2 * min_gap),
/// drop, boundary jitter, then confidence noise, in that order. Jittered
/// boundaries are resampled until end > start (bounded attempts, then the
/// original boundaries are kept). All-zero noise returns the input unchanged.
std::vector<Instance> inject_noise(std::span<const Instance> gt, const NoiseConfig& noise,
                                   double min_gap, std::uint64_t seed);

/// One teacher emission for a video: ground truth with boundaries jittered by
/// boundary_sigma, instances dropped at miss_rate, spurious instances
/// appended at false_positive_rate (Poisson per video), and confidences drawn
/// from [confidence_floor, 1]. Draws are independent per (seed, round).
TeacherPrediction oracle_teacher(std::span<const Instance> gt, const TeacherFidelity& fidelity,
                                 const SimulationConfig& config, std::uint64_t seed, int round);

struct RoundMetrics {
  int round = 0;
  double miou = 0.0;
  double recall_0_5 = 0.0;
  double boundary_error = 0.0;
  std::size_t labels = 0;
  std::size_t corrected = 0;
  std::size_t compensated = 0;
};

/// Full harness: generate ground truth, inject noise, initialize the label
/// state with CALA, then run the configured number of online rounds against
/// the oracle teacher. Emits one metrics row per round including round 0
/// (the post-CALA baseline). Videos are processed on `threads` workers;
/// results are identical for any thread count.
std::vector<RoundMetrics> run_simulation(const SimulationConfig& config, std::size_t threads = 1);

}  // namespace noco
