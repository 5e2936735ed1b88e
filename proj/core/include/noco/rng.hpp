// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace noco {

// FNV-1a, used instead of std::hash so seed derivation is stable across
// standard library implementations.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t combine_seed(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b));
}

// Independent per-video substreams. Derivation from (root, video_id) keeps
// every video's draws identical regardless of scheduling or video count.
enum class SeedStream : std::uint64_t { GroundTruth = 1, Noise = 2, Teacher = 3 };

inline std::uint64_t video_seed(std::uint64_t root, std::string_view video_id, SeedStream stream) {
  return combine_seed(combine_seed(root, fnv1a64(video_id)),
                      static_cast<std::uint64_t>(stream));
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

}  // namespace noco
