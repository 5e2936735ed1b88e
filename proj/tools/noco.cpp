// Copyright 2026 The noco authors
// SPDX-License-Identifier: Apache-2.0
//
// noco: refine noisy action labels from files, run synthetic correction
// simulations, evaluate prediction files, and sweep hyperparameters.
//
// Exit codes: 0 success, 2 parse/config error, 3 infeasible config.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "noco/cala.hpp"
#include "noco/errors.hpp"
#include "noco/eval.hpp"
#include "noco/io.hpp"
#include "noco/online.hpp"
#include "noco/parallel.hpp"
#include "noco/sim.hpp"

namespace {

using namespace noco;

std::vector<double> parse_value_list(const std::string& csv, const char* what) {
  std::vector<double> values;
  std::stringstream stream(csv);
  std::string token;
  while (std::getline(stream, token, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (...) {
      throw InvalidParams(std::string(what) + ": bad number '" + token + "'");
    }
  }
  if (values.empty()) throw InvalidParams(std::string(what) + ": empty list");
  return values;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

struct RefineOptions {
  std::string predictions;
  std::vector<std::string> teachers;
  std::string params_file;
  int rounds = 0;
  std::string out;
  std::string stats;
};

int cmd_refine(const RefineOptions& opt) {
  CorrectionParams params;
  if (!opt.params_file.empty()) params = load_sim_config(opt.params_file).params;
  validate(params);
  if (opt.rounds < 0) throw InvalidParams("--rounds must be non-negative");
  if (opt.rounds > 0 && opt.teachers.empty())
    throw InvalidParams("--rounds > 0 requires at least one --teacher file");

  // All inputs are parsed before any output file is opened.
  const auto predictions = group_instances(load_annotations(opt.predictions));
  std::vector<std::map<std::string, std::vector<Instance>>> teacher_rounds;
  for (const std::string& file : opt.teachers)
    teacher_rounds.push_back(group_instances(load_annotations(file)));

  std::vector<std::pair<std::string, const std::vector<Instance>*>> videos;
  videos.reserve(predictions.size());
  for (const auto& [video_id, instances] : predictions) videos.emplace_back(video_id, &instances);

  struct VideoResult {
    std::vector<AnnotationRecord> records;
    std::vector<RefineRoundStats> stats;
  };
  std::vector<VideoResult> results(videos.size());

  parallel_for(videos.size(), resolve_thread_count(videos.size()), [&](std::size_t v) {
    const auto& [video_id, instances] = videos[v];
    VideoResult& result = results[v];
    result.stats.resize(static_cast<std::size_t>(opt.rounds) + 1);

    OnlineLabelState state = cala(*instances, params, video_id);
    result.stats[0] = {0, state.labels.size(), 0, 0};
    for (int round = 1; round <= opt.rounds; ++round) {
      const auto& teacher_groups =
          teacher_rounds[std::min<std::size_t>(static_cast<std::size_t>(round) - 1,
                                               teacher_rounds.size() - 1)];
      TeacherPrediction teacher;
      if (const auto it = teacher_groups.find(video_id); it != teacher_groups.end())
        teacher.instances = it->second;
      RoundTrace trace = run_round(state, teacher, params, round);
      state = std::move(trace.state_after);
      result.stats[static_cast<std::size_t>(round)] = {round, state.labels.size(),
                                                       trace.corrected_count,
                                                       trace.compensated_count};
    }
    for (const WeightedInstance& label : state.labels)
      result.records.push_back(to_record(video_id, label));
  });

  auto out = open_output(opt.out);
  for (const VideoResult& result : results) write_annotations(out, result.records);

  if (!opt.stats.empty()) {
    std::vector<RefineRoundStats> totals(static_cast<std::size_t>(opt.rounds) + 1);
    for (std::size_t r = 0; r < totals.size(); ++r) {
      totals[r].round = static_cast<int>(r);
      for (const VideoResult& result : results) {
        totals[r].labels += result.stats[r].labels;
        totals[r].corrected += result.stats[r].corrected;
        totals[r].compensated += result.stats[r].compensated;
      }
    }
    auto stats_out = open_output(opt.stats);
    write_refine_stats_csv(stats_out, totals);
  }
  return 0;
}

int cmd_simulate(const std::string& config_file, const std::string& out_file,
                 const std::optional<std::uint64_t>& seed) {
  SimulationConfig config = load_sim_config(config_file);
  if (seed) config.seed = *seed;
  validate(config.params);
  const auto rows = run_simulation(config, resolve_thread_count(config.num_videos));
  auto out = open_output(out_file);
  write_metrics_csv(out, rows);
  return 0;
}

int cmd_evaluate(const std::string& predictions_file, const std::string& groundtruth_file,
                 const std::string& thresholds_csv, const std::string& out_file) {
  std::vector<double> thresholds;
  if (thresholds_csv.empty()) {
    for (int i = 1; i <= 7; ++i) thresholds.push_back(0.1 * i);
  } else {
    thresholds = parse_value_list(thresholds_csv, "--thresholds");
    for (double t : thresholds)
      if (!(t > 0.0 && t <= 1.0)) throw InvalidParams("--thresholds must lie in (0,1]");
  }

  const auto preds = group_instances(load_annotations(predictions_file));
  const auto gts = group_instances(load_annotations(groundtruth_file));

  std::map<std::string, VideoEval> by_video;
  for (const auto& [video_id, instances] : preds) by_video[video_id].preds = instances;
  for (const auto& [video_id, instances] : gts) by_video[video_id].gts = instances;
  std::vector<VideoEval> evals;
  evals.reserve(by_video.size());
  for (auto& [video_id, eval] : by_video) evals.push_back(std::move(eval));

  const EvalReport report = evaluate_videos(evals, thresholds);
  std::cout << report_text(report);
  if (!out_file.empty()) {
    auto out = open_output(out_file);
    write_report_csv(out, report);
  }
  return 0;
}

int cmd_sweep(const std::string& config_file, const std::string& param,
              const std::string& values_csv, const std::string& out_file,
              const std::optional<std::uint64_t>& seed) {
  SimulationConfig base = load_sim_config(config_file);
  if (seed) base.seed = *seed;
  const std::vector<double> values = parse_value_list(values_csv, "--values");

  // Validate every point before running anything.
  for (double value : values) {
    SimulationConfig probe = base;
    apply_sweep_param(probe.params, param, value);
    validate(probe.params);
  }

  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double value : values) {
    SimulationConfig config = base;
    apply_sweep_param(config.params, param, value);
    const auto trace = run_simulation(config, resolve_thread_count(config.num_videos));
    const RoundMetrics& final_row = trace.back();
    rows.push_back({param, value, final_row.miou, final_row.recall_0_5,
                    final_row.boundary_error});
  }
  auto out = open_output(out_file);
  write_sweep_csv(out, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noisy pseudo-label correction for temporal action localization"};
  app.require_subcommand(1);

  RefineOptions refine;
  auto* refine_cmd = app.add_subcommand("refine", "augment and correct labels from files");
  refine_cmd->add_option("--predictions", refine.predictions, "input predictions (JSONL)")
      ->required();
  refine_cmd->add_option("--teacher", refine.teachers,
                         "teacher prediction file for round i (repeatable; last reused)");
  refine_cmd->add_option("--params", refine.params_file, "hyperparameter config file");
  refine_cmd->add_option("--rounds", refine.rounds, "number of online correction rounds");
  refine_cmd->add_option("--out", refine.out, "refined labels output (JSONL)")->required();
  refine_cmd->add_option("--stats", refine.stats, "per-round stats output (CSV)");

  std::string sim_config;
  std::string sim_out;
  std::optional<std::uint64_t> sim_seed;
  auto* simulate_cmd = app.add_subcommand("simulate", "run the synthetic-noise harness");
  simulate_cmd->add_option("--config", sim_config, "simulation config file")->required();
  simulate_cmd->add_option("--out", sim_out, "metrics trace output (CSV)")->required();
  simulate_cmd->add_option("--seed", sim_seed, "override the config seed");

  std::string eval_preds;
  std::string eval_gts;
  std::string eval_thresholds;
  std::string eval_out;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "score predictions against ground truth");
  evaluate_cmd->add_option("--predictions", eval_preds, "predictions (JSONL)")->required();
  evaluate_cmd->add_option("--groundtruth", eval_gts, "ground truth (JSONL)")->required();
  evaluate_cmd->add_option("--thresholds", eval_thresholds,
                           "comma-separated IoU thresholds (default 0.1..0.7)");
  evaluate_cmd->add_option("--out", eval_out, "report output (CSV)");

  std::string sweep_config;
  std::string sweep_param;
  std::string sweep_values;
  std::string sweep_out;
  std::optional<std::uint64_t> sweep_seed;
  auto* sweep_cmd = app.add_subcommand("sweep", "simulate over a list of hyperparameter values");
  sweep_cmd->add_option("--config", sweep_config, "simulation config file")->required();
  sweep_cmd->add_option("--param", sweep_param, "one of rho psi eta0 eta1 eta2 alpha beta")
      ->required();
  sweep_cmd->add_option("--values", sweep_values, "comma-separated values")->required();
  sweep_cmd->add_option("--out", sweep_out, "sweep results output (CSV)")->required();
  sweep_cmd->add_option("--seed", sweep_seed, "override the config seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (refine_cmd->parsed()) return cmd_refine(refine);
    if (simulate_cmd->parsed()) return cmd_simulate(sim_config, sim_out, sim_seed);
    if (evaluate_cmd->parsed())
      return cmd_evaluate(eval_preds, eval_gts, eval_thresholds, eval_out);
    if (sweep_cmd->parsed())
      return cmd_sweep(sweep_config, sweep_param, sweep_values, sweep_out, sweep_seed);
  } catch (const InfeasibleConfig& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
