#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "graspbo/bo.hpp"
#include "graspbo/env.hpp"

namespace graspbo {

/// One experiment: scene, hand, evaluation arm(s), optimizer budget, seeds,
/// and output location. Loaded from a JSON file; unknown keys are rejected.
struct CampaignConfig {
  std::string object_name = "bottle";
  std::vector<ShapePrimitive> custom_primitives;  // object_name == "custom"
  double table_height = 0.0;
  std::string capability_map_path;  // empty: synthetic radial default

  EvalArm arm = EvalArm::Gr;
  std::vector<EvalArm> arms = {EvalArm::Simple, EvalArm::Cp, EvalArm::Ar,
                               EvalArm::Gr};

  TrialConfig trial;  // weights, heuristics, friction, metrics, noise
  NormalizationState::Mode norm_mode = NormalizationState::Mode::Fixed;
  int calibration_trials = 200;

  int n0 = 20;
  int iters = 50;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  double threshold = 0.5;

  GpConfig gp;
  AcquisitionConfig acquisition;
  ProxyConfig proxy;

  std::string out_dir = "out";
  int workers = 0;  // 0: hardware concurrency

  ObjectModel build_object() const;
  Scene build_scene() const;
  HandModel hand = HandModel::default_model();
};

CampaignConfig load_config(const std::string& path);

/// Common-metric score of one trial: Eq.-8-style product recomputed from
/// logged components with w2 = 1 (q_c * q_f * normalized epsilon quality).
double common_metric(const EvalRecord& r);

struct SeedResult {
  std::uint64_t seed = 0;
  EvalArm arm = EvalArm::Gr;
  History history;
  double best_y = 0.0;
  double best_common = 0.0;
  int iterations_to_threshold = -1;  // first iteration with y > threshold
  bool proxy_success = false;
  double wall_ms = 0.0;
};

struct CampaignResult {
  EvalArm arm = EvalArm::Gr;
  std::vector<SeedResult> seeds;

  double mean_best_common() const;
  double max_best_common() const;
  double mean_best_y() const;
  int proxy_success_count() const;
};

/// One BO campaign for one seed: calibration pre-pass (fixed normalization
/// mode), then the optimization loop. Deterministic for a fixed seed.
SeedResult run_seed(const CampaignConfig& config, EvalArm arm,
                    std::uint64_t seed);

/// All seeds, fanned out across a worker pool; results ordered by seed.
CampaignResult run_campaign(const CampaignConfig& config, EvalArm arm);

/// History CSV (schema graspbo.history.v1), byte-deterministic.
void write_history_csv(const std::string& path, const SeedResult& result);
History read_history_csv(const std::string& path);

/// Per-iteration mean incumbent of the common metric with a 95% CI.
struct CurvePoint {
  int iteration;
  double mean, ci_lo, ci_hi;
};
std::vector<CurvePoint> common_metric_curve(const CampaignResult& result);
void write_curve(const std::string& path, const std::vector<CurvePoint>& c);

/// 95% normal-approximation half-width, used by the curve emitter.
double ci95_half_width(const std::vector<double>& values);

struct AblationResult {
  std::vector<CampaignResult> arms;
  bool ordering_holds = false;  // mean(gr) > mean(ar) > mean(cp) > mean(simple)
  double gr_simple_gap = 0.0;
};

/// The four-arm comparison on shared seeds, scored on the common metric.
AblationResult ablate(const CampaignConfig& config);

struct MetricSweepRow {
  int metric = 0;  // 0..3 (w_{metric+1} = 1)
  std::uint64_t seed = 0;
  int iterations_to_threshold = -1;
  bool reached = false;
  bool proxy_success = false;
  double wall_ms = 0.0;
};

struct MetricSweepResult {
  std::vector<MetricSweepRow> rows;
  std::array<int, 4> failure_counts{};  // seeds never crossing the threshold
  std::array<int, 4> success_counts{};  // proxy successes per metric
  std::array<double, 4> mean_iterations{};  // over seeds that reached it
};

/// Four campaigns with w_i = 1 under the gr arm.
MetricSweepResult metric_sweep(const CampaignConfig& config);

/// w_i = s_i / sum(s); throws AllZero when every count is zero.
MetricWeights derive_weights(const std::array<int, 4>& success_counts);

/// Report rebuilt purely from emitted CSVs (recomputability check).
struct CsvSummary {
  std::string file;
  double best_y = 0.0;
  double best_common = 0.0;
  int iterations_to_threshold = -1;
};
std::vector<CsvSummary> summarize_csv_dir(const std::string& dir,
                                          double threshold);

void write_report_jsonl(const std::string& path,
                        const std::vector<CampaignResult>& results);

}  // namespace graspbo
