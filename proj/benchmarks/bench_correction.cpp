// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "noco/cala.hpp"
#include "noco/online.hpp"
#include "noco/sim.hpp"

namespace {

using namespace noco;

SimulationConfig bench_config(std::size_t videos) {
  SimulationConfig config;
  config.num_videos = videos;
  config.classes = 10;
  config.instances_min = 3;
  config.instances_max = 8;
  config.rounds = 3;
  config.seed = 99;
  config.noise.boundary_jitter_sigma = 0.3;
  config.noise.drop_rate = 0.2;
  config.noise.merge_rate = 0.2;
  config.teacher.boundary_sigma = 0.1;
  config.teacher.miss_rate = 0.05;
  config.teacher.confidence_floor = 0.9;
  return config;
}

void BM_Cala(benchmark::State& state) {
  const auto config = bench_config(1);
  const auto gt = gen_ground_truth(config, config.seed);
  const auto noisy = inject_noise(gt[0].instances, config.noise, config.min_gap, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cala(noisy, config.params));
  }
}
BENCHMARK(BM_Cala);

void BM_RunRound(benchmark::State& state) {
  const auto config = bench_config(1);
  const auto gt = gen_ground_truth(config, config.seed);
  const auto noisy = inject_noise(gt[0].instances, config.noise, config.min_gap, 7);
  const auto initial = cala(noisy, config.params);
  const auto teacher = oracle_teacher(gt[0].instances, config.teacher, config, 11, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_round(initial, teacher, config.params, 1));
  }
}
BENCHMARK(BM_RunRound);

void BM_Simulation(benchmark::State& state) {
  const auto config = bench_config(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_simulation(config, 1));
  }
}
BENCHMARK(BM_Simulation)->Arg(8)->Arg(32);

}  // namespace
