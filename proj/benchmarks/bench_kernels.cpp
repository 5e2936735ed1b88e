// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "noco/kernels.hpp"

namespace {

using namespace noco;

std::vector<Instance> make_pool(std::size_t n, int classes = 20) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> start(0.0, 600.0);
  std::uniform_real_distribution<double> dur(0.5, 12.0);
  std::uniform_real_distribution<double> conf(0.0, 1.0);
  std::uniform_int_distribution<int> category(0, classes - 1);
  std::vector<Instance> pool(n);
  for (Instance& a : pool) {
    a.category = category(rng);
    a.confidence = conf(rng);
    a.start = start(rng);
    a.end = a.start + dur(rng);
  }
  return pool;
}

void BM_Iou(benchmark::State& state) {
  const auto pool = make_pool(256);
  std::size_t i = 0;
  for (auto _ : state) {
    const Instance& a = pool[i % pool.size()];
    const Instance& b = pool[(i * 7 + 3) % pool.size()];
    benchmark::DoNotOptimize(iou(a, b));
    ++i;
  }
}
BENCHMARK(BM_Iou);

void BM_Nms(benchmark::State& state) {
  const auto pool = make_pool(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(nms(pool, 0.45, NmsScope::PerClass));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Nms)->Range(64, 4096)->Complexity();

void BM_ConfidenceFilter(benchmark::State& state) {
  const auto pool = make_pool(4096);
  for (auto _ : state) {
    benchmark::DoNotOptimize(confidence_filter(pool, 0.1));
  }
}
BENCHMARK(BM_ConfidenceFilter);

}  // namespace
