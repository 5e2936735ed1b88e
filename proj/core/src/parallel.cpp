// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#include "noco/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace noco {

std::size_t resolve_thread_count(std::size_t jobs) {
  if (jobs <= 1) return 1;
  std::size_t threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  if (const char* cap = std::getenv("NOCO_THREADS")) {
    try {
      const unsigned long parsed = std::stoul(cap);
      threads = parsed == 0 ? 1 : static_cast<std::size_t>(parsed);
    } catch (...) {
      // Unparseable cap is ignored.
    }
  }
  return std::min(threads, jobs);
}

}  // namespace noco
