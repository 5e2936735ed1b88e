// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
#include "noco/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "json.hpp"
#include "noco/errors.hpp"

namespace noco {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double require_number(const json& j, const char* key, std::size_t line) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(line, std::string("missing key '") + key + "'");
  if (!it->is_number()) throw ParseError(line, std::string("key '") + key + "' must be a number");
  const double value = it->get<double>();
  if (!std::isfinite(value))
    throw ParseError(line, std::string("key '") + key + "' must be finite");
  return value;
}

// "%.12g"; enough for CSV, deterministic for a given binary.
std::string fmt(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

}  // namespace

AnnotationRecord to_record(const std::string& video_id, const Instance& instance) {
  return {video_id, instance.category, instance.confidence, instance.start, instance.end, {}};
}

AnnotationRecord to_record(const std::string& video_id, const WeightedInstance& label) {
  return {video_id,          label.instance.category, label.instance.confidence,
          label.instance.start, label.instance.end,   label.weight};
}

Instance to_instance(const AnnotationRecord& r) {
  return {r.category, r.confidence, r.start, r.end};
}

WeightedInstance to_weighted(const AnnotationRecord& r) {
  return {to_instance(r), r.weight.value_or(1.0)};
}

std::vector<AnnotationRecord> parse_annotations(std::istream& in) {
  std::vector<AnnotationRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;

    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(line_no, e.what());
    }
    if (!j.is_object()) throw ParseError(line_no, "record must be a JSON object");

    AnnotationRecord r;
    const auto id = j.find("video_id");
    if (id == j.end() || !id->is_string())
      throw ParseError(line_no, "key 'video_id' must be a string");
    r.video_id = id->get<std::string>();
    if (r.video_id.empty()) throw ParseError(line_no, "key 'video_id' must be non-empty");

    const auto category = j.find("category");
    if (category == j.end() || !category->is_number_integer())
      throw ParseError(line_no, "key 'category' must be an integer");
    r.category = category->get<int>();
    if (r.category < 0) throw ParseError(line_no, "key 'category' must be non-negative");

    r.confidence = require_number(j, "confidence", line_no);
    r.start = require_number(j, "start", line_no);
    r.end = require_number(j, "end", line_no);
    if (!(r.end > r.start)) throw ParseError(line_no, "end must be greater than start");

    if (const auto weight = j.find("weight"); weight != j.end()) {
      const double w = require_number(j, "weight", line_no);
      if (!(w > 0.0)) throw ParseError(line_no, "key 'weight' must be positive");
      r.weight = w;
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return parse_annotations(in);
}

std::string serialize_record(const AnnotationRecord& r) {
  // nlohmann serializes doubles with the shortest representation that parses
  // back to the same value, so times and weights round-trip exactly.
  json j;
  j["video_id"] = r.video_id;
  j["category"] = r.category;
  j["confidence"] = r.confidence;
  j["start"] = r.start;
  j["end"] = r.end;
  if (r.weight) j["weight"] = *r.weight;
  return j.dump();
}

void write_annotations(std::ostream& out, std::span<const AnnotationRecord> records) {
  for (const AnnotationRecord& r : records) out << serialize_record(r) << '\n';
}

std::map<std::string, std::vector<Instance>> group_instances(
    std::span<const AnnotationRecord> records) {
  std::map<std::string, std::vector<Instance>> groups;
  for (const AnnotationRecord& r : records) groups[r.video_id].push_back(to_instance(r));
  return groups;
}

namespace {

double to_double(std::string_view value, std::size_t line) {
  try {
    std::size_t used = 0;
    const double parsed = std::stod(std::string(value), &used);
    if (used != value.size() || !std::isfinite(parsed))
      throw ConfigError(line, "expected a finite number, got '" + std::string(value) + "'");
    return parsed;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    throw ConfigError(line, "expected a number, got '" + std::string(value) + "'");
  }
}

std::uint64_t to_u64(std::string_view value, std::size_t line) {
  try {
    std::size_t used = 0;
    const unsigned long long parsed = std::stoull(std::string(value), &used);
    if (used != value.size()) throw ConfigError(line, "trailing characters after integer");
    return parsed;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    throw ConfigError(line, "expected an unsigned integer, got '" + std::string(value) + "'");
  }
}

bool to_bool(std::string_view value, std::size_t line) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError(line, "expected true/false, got '" + std::string(value) + "'");
}

}  // namespace

SimulationConfig parse_sim_config(std::istream& in) {
  SimulationConfig cfg;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line{raw};
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected key = value");
    const std::string key{trim(line.substr(0, eq))};
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError(line_no, "missing value for key '" + key + "'");

    if (key == "num_videos") cfg.num_videos = static_cast<std::size_t>(to_u64(value, line_no));
    else if (key == "classes") cfg.classes = static_cast<int>(to_u64(value, line_no));
    else if (key == "instances_min")
      cfg.instances_min = static_cast<std::size_t>(to_u64(value, line_no));
    else if (key == "instances_max")
      cfg.instances_max = static_cast<std::size_t>(to_u64(value, line_no));
    else if (key == "video_length") cfg.video_length = to_double(value, line_no);
    else if (key == "min_gap") cfg.min_gap = to_double(value, line_no);
    else if (key == "duration_min") cfg.duration_min = to_double(value, line_no);
    else if (key == "duration_max") cfg.duration_max = to_double(value, line_no);
    else if (key == "rounds") cfg.rounds = static_cast<int>(to_u64(value, line_no));
    else if (key == "seed") cfg.seed = to_u64(value, line_no);
    else if (key == "noise.boundary_jitter_sigma")
      cfg.noise.boundary_jitter_sigma = to_double(value, line_no);
    else if (key == "noise.drop_rate") cfg.noise.drop_rate = to_double(value, line_no);
    else if (key == "noise.merge_rate") cfg.noise.merge_rate = to_double(value, line_no);
    else if (key == "noise.confidence_noise_sigma")
      cfg.noise.confidence_noise_sigma = to_double(value, line_no);
    else if (key == "teacher.boundary_sigma")
      cfg.teacher.boundary_sigma = to_double(value, line_no);
    else if (key == "teacher.miss_rate") cfg.teacher.miss_rate = to_double(value, line_no);
    else if (key == "teacher.false_positive_rate")
      cfg.teacher.false_positive_rate = to_double(value, line_no);
    else if (key == "teacher.confidence_floor")
      cfg.teacher.confidence_floor = to_double(value, line_no);
    else if (key == "params.rho") cfg.params.nms_threshold = to_double(value, line_no);
    else if (key == "params.psi") cfg.params.confidence_threshold = to_double(value, line_no);
    else if (key == "params.eta0") cfg.params.iou_aug = to_double(value, line_no);
    else if (key == "params.eta1") cfg.params.iou_correct = to_double(value, line_no);
    else if (key == "params.eta2") cfg.params.iou_compensate = to_double(value, line_no);
    else if (key == "params.alpha") cfg.params.alpha = to_double(value, line_no);
    else if (key == "params.beta") {
      if (value == "n") {
        cfg.params.beta_mode = BetaMode::EqualToN;
      } else {
        cfg.params.beta_mode = BetaMode::Fixed;
        cfg.params.beta = to_double(value, line_no);
      }
    } else if (key == "params.lambda") {
      cfg.params.lambda = to_double(value, line_no);
    } else if (key == "params.fusion") {
      if (value == "normalized") cfg.params.fusion = FusionMode::Normalized;
      else if (value == "literal") cfg.params.fusion = FusionMode::Literal;
      else throw ConfigError(line_no, "params.fusion must be normalized or literal");
    } else if (key == "params.nms_scope") {
      if (value == "per_class") cfg.params.nms_scope = NmsScope::PerClass;
      else if (value == "global") cfg.params.nms_scope = NmsScope::Global;
      else throw ConfigError(line_no, "params.nms_scope must be per_class or global");
    } else if (key == "params.enable_aic") {
      cfg.params.enable_aic = to_bool(value, line_no);
    } else if (key == "params.enable_mic") {
      cfg.params.enable_mic = to_bool(value, line_no);
    } else {
      throw ConfigError(line_no, "unknown key '" + key + "'");
    }
  }
  return cfg;
}

SimulationConfig load_sim_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return parse_sim_config(in);
}

void apply_sweep_param(CorrectionParams& params, const std::string& name, double value) {
  if (name == "rho") params.nms_threshold = value;
  else if (name == "psi") params.confidence_threshold = value;
  else if (name == "eta0") params.iou_aug = value;
  else if (name == "eta1") params.iou_correct = value;
  else if (name == "eta2") params.iou_compensate = value;
  else if (name == "alpha") params.alpha = value;
  else if (name == "beta") {
    params.beta_mode = BetaMode::Fixed;
    params.beta = value;
  } else {
    throw UnknownParam("unknown parameter '" + name + "'");
  }
}

void write_metrics_csv(std::ostream& out, std::span<const RoundMetrics> rows) {
  out << "round,miou,recall_0.5,boundary_error,labels,corrected,compensated\n";
  for (const RoundMetrics& r : rows) {
    out << r.round << ',' << fmt(r.miou) << ',' << fmt(r.recall_0_5) << ','
        << fmt(r.boundary_error) << ',' << r.labels << ',' << r.corrected << ','
        << r.compensated << '\n';
  }
}

void write_refine_stats_csv(std::ostream& out, std::span<const RefineRoundStats> rows) {
  out << "round,labels,corrected,compensated\n";
  for (const RefineRoundStats& r : rows) {
    out << r.round << ',' << r.labels << ',' << r.corrected << ',' << r.compensated << '\n';
  }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "param,value,final_miou,final_recall,final_boundary_error\n";
  for (const SweepRow& r : rows) {
    out << r.param << ',' << fmt(r.value) << ',' << fmt(r.final_miou) << ','
        << fmt(r.final_recall) << ',' << fmt(r.final_boundary_error) << '\n';
  }
}

void write_report_csv(std::ostream& out, const EvalReport& report) {
  out << "average_map,miou,mean_boundary_error";
  for (const auto& [threshold, value] : report.map_per_threshold)
    out << ",map@" << fmt(threshold);
  for (const auto& [threshold, value] : report.recall_per_threshold)
    out << ",recall@" << fmt(threshold);
  out << '\n';
  out << fmt(report.average_map) << ',' << fmt(report.miou) << ','
      << fmt(report.mean_boundary_error);
  for (const auto& [threshold, value] : report.map_per_threshold) out << ',' << fmt(value);
  for (const auto& [threshold, value] : report.recall_per_threshold) out << ',' << fmt(value);
  out << '\n';
}

std::string report_text(const EvalReport& report) {
  std::ostringstream out;
  char buf[64];
  for (const auto& [threshold, value] : report.map_per_threshold) {
    std::snprintf(buf, sizeof buf, "mAP@%.2f:  %.4f\n", threshold, value);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "average mAP: %.4f\n", report.average_map);
  out << buf;
  for (const auto& [threshold, value] : report.recall_per_threshold) {
    std::snprintf(buf, sizeof buf, "recall@%.2f: %.4f\n", threshold, value);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "mIoU: %.4f\n", report.miou);
  out << buf;
  std::snprintf(buf, sizeof buf, "mean boundary error: %.4f s\n", report.mean_boundary_error);
  out << buf;
  return out.str();
}

}  // namespace noco
