// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#include "noco/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <tuple>

#include "noco/cala.hpp"
#include "noco/errors.hpp"
#include "noco/eval.hpp"
#include "noco/parallel.hpp"
#include "noco/rng.hpp"

namespace noco {

namespace {

std::string make_video_id(std::size_t index) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "v%04zu", index);
  return buf;
}

double uniform01(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

double uniform_in(double lo, double hi, std::mt19937_64& rng) {
  if (hi <= lo) return lo;
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool bernoulli(double rate, std::mt19937_64& rng) {
  if (rate <= 0.0) return false;
  if (rate >= 1.0) return true;
  return std::bernoulli_distribution(rate)(rng);
}

// Gaussian jitter on both boundaries, resampled until the duration stays
// positive; after `kJitterAttempts` failures the original boundaries win.
constexpr int kJitterAttempts = 100;

void jitter_boundaries(Instance& a, double sigma, std::mt19937_64& rng) {
  if (sigma <= 0.0) return;
  std::normal_distribution<double> noise(0.0, sigma);
  for (int attempt = 0; attempt < kJitterAttempts; ++attempt) {
    const double start = a.start + noise(rng);
    const double end = a.end + noise(rng);
    if (end > start) {
      a.start = start;
      a.end = end;
      return;
    }
  }
}

void check_config(const SimulationConfig& c) {
  if (c.classes <= 0) throw ConfigError("classes must be positive");
  if (c.video_length <= 0.0) throw ConfigError("video_length must be positive");
  if (c.min_gap < 0.0) throw ConfigError("min_gap must be non-negative");
  if (c.duration_min <= 0.0 || c.duration_max < c.duration_min)
    throw ConfigError("duration range must satisfy 0 < duration_min <= duration_max");
  if (c.instances_max < c.instances_min)
    throw ConfigError("instances range must satisfy instances_min <= instances_max");
  if (c.rounds < 0) throw ConfigError("rounds must be non-negative");
  validate(c.params);

  // Worst-case draw must fit, so generation never fails mid-run.
  if (c.instances_max > 0) {
    const double need = static_cast<double>(c.instances_max) * c.duration_max +
                        static_cast<double>(c.instances_max - 1) * c.min_gap;
    if (need > c.video_length) {
      throw InfeasibleConfig("instances_max instances of duration_max seconds cannot fit in "
                             "video_length with the configured min_gap");
    }
  }
}

}  // namespace

std::vector<VideoGroundTruth> gen_ground_truth(const SimulationConfig& config,
                                               std::uint64_t seed) {
  check_config(config);

  std::vector<VideoGroundTruth> videos(config.num_videos);
  for (std::size_t v = 0; v < config.num_videos; ++v) {
    videos[v].video_id = make_video_id(v);
    auto rng = make_rng(video_seed(seed, videos[v].video_id, SeedStream::GroundTruth));

    std::size_t count = config.instances_min;
    if (config.instances_max > config.instances_min) {
      count = std::uniform_int_distribution<std::size_t>(config.instances_min,
                                                         config.instances_max)(rng);
    }
    if (count == 0) continue;

    std::vector<double> durations(count);
    double total_duration = 0.0;
    for (double& d : durations) {
      d = uniform_in(config.duration_min, config.duration_max, rng);
      total_duration += d;
    }

    // Distribute the leftover time over count+1 gaps on top of the mandatory
    // min_gap separations.
    const double slack = std::max(
        0.0, config.video_length - total_duration -
                 static_cast<double>(count - 1) * config.min_gap);
    std::vector<double> shares(count + 1);
    double share_sum = 0.0;
    for (double& s : shares) {
      s = uniform01(rng);
      share_sum += s;
    }

    double cursor = slack * shares[0] / share_sum;
    for (std::size_t i = 0; i < count; ++i) {
      Instance inst;
      inst.category = std::uniform_int_distribution<int>(0, config.classes - 1)(rng);
      inst.confidence = 1.0;
      inst.start = cursor;
      inst.end = cursor + durations[i];
      videos[v].instances.push_back(inst);
      cursor = inst.end + config.min_gap + slack * shares[i + 1] / share_sum;
    }
  }
  return videos;
}

std::vector<Instance> inject_noise(std::span<const Instance> gt, const NoiseConfig& noise,
                                   double min_gap, std::uint64_t seed) {
  auto rng = make_rng(seed);

  std::vector<Instance> sorted(gt.begin(), gt.end());
  std::sort(sorted.begin(), sorted.end(), [](const Instance& a, const Instance& b) {
    return std::tie(a.start, a.end, a.category) < std::tie(b.start, b.end, b.category);
  });

  // Merge: adjacent same-class pairs closer than 2 * min_gap collapse to
  // their hull, carrying the larger confidence. Pairs do not chain.
  std::vector<Instance> merged;
  for (std::size_t i = 0; i < sorted.size();) {
    if (i + 1 < sorted.size() && sorted[i].category == sorted[i + 1].category &&
        sorted[i + 1].start - sorted[i].end < 2.0 * min_gap &&
        bernoulli(noise.merge_rate, rng)) {
      Instance hull = sorted[i];
      hull.end = std::max(sorted[i].end, sorted[i + 1].end);
      hull.confidence = std::max(sorted[i].confidence, sorted[i + 1].confidence);
      merged.push_back(hull);
      i += 2;
    } else {
      merged.push_back(sorted[i]);
      ++i;
    }
  }

  std::vector<Instance> out;
  for (Instance& inst : merged) {
    if (bernoulli(noise.drop_rate, rng)) continue;
    jitter_boundaries(inst, noise.boundary_jitter_sigma, rng);
    if (noise.confidence_noise_sigma > 0.0) {
      inst.confidence += std::normal_distribution<double>(0.0, noise.confidence_noise_sigma)(rng);
    }
    out.push_back(inst);
  }
  return out;
}

TeacherPrediction oracle_teacher(std::span<const Instance> gt, const TeacherFidelity& fidelity,
                                 const SimulationConfig& config, std::uint64_t seed, int round) {
  auto rng = make_rng(combine_seed(seed, static_cast<std::uint64_t>(round)));

  TeacherPrediction teacher;
  for (const Instance& truth : gt) {
    if (bernoulli(fidelity.miss_rate, rng)) continue;
    Instance pred = truth;
    jitter_boundaries(pred, fidelity.boundary_sigma, rng);
    pred.confidence =
        fidelity.confidence_floor + (1.0 - fidelity.confidence_floor) * uniform01(rng);
    teacher.instances.push_back(pred);
  }

  if (fidelity.false_positive_rate > 0.0) {
    const int spurious = std::poisson_distribution<int>(fidelity.false_positive_rate)(rng);
    for (int i = 0; i < spurious; ++i) {
      Instance fake;
      fake.category = std::uniform_int_distribution<int>(0, config.classes - 1)(rng);
      const double dur = uniform_in(config.duration_min, config.duration_max, rng);
      fake.start = uniform01(rng) * std::max(0.0, config.video_length - dur);
      fake.end = fake.start + dur;
      fake.confidence =
          fidelity.confidence_floor + (1.0 - fidelity.confidence_floor) * uniform01(rng);
      teacher.instances.push_back(fake);
    }
  }
  return teacher;
}

std::vector<RoundMetrics> run_simulation(const SimulationConfig& config, std::size_t threads) {
  const std::vector<VideoGroundTruth> ground_truth = gen_ground_truth(config, config.seed);
  const std::size_t num_videos = ground_truth.size();
  const std::size_t num_rows = static_cast<std::size_t>(config.rounds) + 1;

  struct VideoRound {
    std::vector<Instance> labels;
    std::size_t corrected = 0;
    std::size_t compensated = 0;
  };
  std::vector<std::vector<VideoRound>> per_video(num_videos);

  parallel_for(num_videos, threads, [&](std::size_t v) {
    const VideoGroundTruth& video = ground_truth[v];
    auto& rows = per_video[v];
    rows.resize(num_rows);

    const std::vector<Instance> noisy =
        inject_noise(video.instances, config.noise,
                     config.min_gap, video_seed(config.seed, video.video_id, SeedStream::Noise));
    OnlineLabelState state = cala(noisy, config.params, video.video_id);

    auto snapshot = [](const OnlineLabelState& s) {
      std::vector<Instance> out;
      out.reserve(s.labels.size());
      for (const WeightedInstance& l : s.labels) out.push_back(l.instance);
      return out;
    };
    rows[0].labels = snapshot(state);

    const std::uint64_t teacher_seed =
        video_seed(config.seed, video.video_id, SeedStream::Teacher);
    for (int round = 1; round <= config.rounds; ++round) {
      const TeacherPrediction teacher =
          oracle_teacher(video.instances, config.teacher, config, teacher_seed, round);
      RoundTrace trace = run_round(state, teacher, config.params, round);
      state = std::move(trace.state_after);
      auto& row = rows[static_cast<std::size_t>(round)];
      row.labels = snapshot(state);
      row.corrected = trace.corrected_count;
      row.compensated = trace.compensated_count;
    }
  });

  // Aggregate in video order so the trace is identical for any thread count.
  std::vector<RoundMetrics> metrics(num_rows);
  for (std::size_t round = 0; round < num_rows; ++round) {
    std::vector<VideoEval> evals(num_videos);
    RoundMetrics& row = metrics[round];
    row.round = static_cast<int>(round);
    for (std::size_t v = 0; v < num_videos; ++v) {
      evals[v].preds = per_video[v][round].labels;
      evals[v].gts = ground_truth[v].instances;
      row.labels += per_video[v][round].labels.size();
      row.corrected += per_video[v][round].corrected;
      row.compensated += per_video[v][round].compensated;
    }
    row.miou = videos_miou(evals);
    row.recall_0_5 = videos_recall(evals, 0.5);
    row.boundary_error = videos_boundary_error(evals);
  }
  return metrics;
}

}  // namespace noco
