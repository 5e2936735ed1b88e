// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "noco/eval.hpp"
#include "noco/sim.hpp"
#include "noco/types.hpp"

namespace noco {

/// One interchange line: a flat JSON object with keys video_id, category,
/// confidence, start, end and optionally weight. Times round-trip exactly.
struct AnnotationRecord {
  std::string video_id;
  int category = 0;
  double confidence = 0.0;
  double start = 0.0;
  double end = 0.0;
  std::optional<double> weight;

  friend bool operator==(const AnnotationRecord&, const AnnotationRecord&) = default;
};

AnnotationRecord to_record(const std::string& video_id, const Instance& instance);
AnnotationRecord to_record(const std::string& video_id, const WeightedInstance& label);
Instance to_instance(const AnnotationRecord& record);
WeightedInstance to_weighted(const AnnotationRecord& record);  // missing weight reads as 1

/// Parses one record per line. Empty and whitespace-only lines are skipped.
/// Malformed lines raise ParseError carrying the 1-based line number.
std::vector<AnnotationRecord> parse_annotations(std::istream& in);
std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path);

std::string serialize_record(const AnnotationRecord& record);
void write_annotations(std::ostream& out, std::span<const AnnotationRecord> records);

/// Records grouped by video id (ordered), record order preserved per video.
std::map<std::string, std::vector<Instance>> group_instances(
    std::span<const AnnotationRecord> records);

/// Plain-text key/value simulation config ("key = value", '#' comments).
/// Unknown keys raise ConfigError with the 1-based line number; missing keys
/// keep their defaults.
SimulationConfig parse_sim_config(std::istream& in);
SimulationConfig load_sim_config(const std::filesystem::path& path);

/// Sets the hyperparameter named by its short config/sweep name (rho, psi,
/// eta0, eta1, eta2, alpha, beta). A beta value switches beta_mode to Fixed.
/// Throws UnknownParam.
void apply_sweep_param(CorrectionParams& params, const std::string& name, double value);

void write_metrics_csv(std::ostream& out, std::span<const RoundMetrics> rows);

struct RefineRoundStats {
  int round = 0;
  std::size_t labels = 0;
  std::size_t corrected = 0;
  std::size_t compensated = 0;
};
void write_refine_stats_csv(std::ostream& out, std::span<const RefineRoundStats> rows);

struct SweepRow {
  std::string param;
  double value = 0.0;
  double final_miou = 0.0;
  double final_recall = 0.0;
  double final_boundary_error = 0.0;
};
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

/// EvalReport as a single CSV row (per-threshold mAP/recall columns plus the
/// scalar metrics) and as human-readable text.
void write_report_csv(std::ostream& out, const EvalReport& report);
std::string report_text(const EvalReport& report);

}  // namespace noco
