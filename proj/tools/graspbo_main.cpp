// Campaign runner: single runs, the four-arm ablation, per-metric sweeps,
// weight derivation, and report regeneration from emitted CSVs.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "graspbo/campaign.hpp"

namespace {

using namespace graspbo;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCheckFailed = 3;

std::string seed_csv_path(const std::string& dir, EvalArm arm,
                          std::uint64_t seed) {
  return dir + "/" + to_string(arm) + "_seed" + std::to_string(seed) + ".csv";
}

void apply_overrides(CampaignConfig& cfg, const std::string& seeds_csv,
                     const std::string& out, const std::string& arm,
                     double threshold) {
  if (!seeds_csv.empty()) {
    cfg.seeds.clear();
    std::stringstream ss(seeds_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) cfg.seeds.push_back(std::stoull(tok));
    if (cfg.seeds.empty()) throw ConfigError("--seeds parsed to nothing");
  }
  if (!out.empty()) cfg.out_dir = out;
  if (!arm.empty()) cfg.arm = arm_from_string(arm);
  if (threshold >= 0.0) cfg.threshold = threshold;
}

void emit_campaign_files(const CampaignConfig& cfg,
                         const std::vector<CampaignResult>& results) {
  std::filesystem::create_directories(cfg.out_dir);
  for (const auto& campaign : results) {
    for (const auto& seed : campaign.seeds)
      write_history_csv(seed_csv_path(cfg.out_dir, campaign.arm, seed.seed),
                        seed);
    write_curve(cfg.out_dir + "/curve_" + to_string(campaign.arm) + ".txt",
                common_metric_curve(campaign));
  }
  write_report_jsonl(cfg.out_dir + "/report.jsonl", results);
}

int cmd_run(const CampaignConfig& cfg, bool check) {
  const CampaignResult result = run_campaign(cfg, cfg.arm);
  emit_campaign_files(cfg, {result});
  std::printf("arm=%s seeds=%zu mean_best=%.4f max_best=%.4f\n",
              to_string(cfg.arm).c_str(), result.seeds.size(),
              result.mean_best_y(), result.max_best_common());
  if (check) {
    for (const auto& s : result.seeds) {
      if (s.iterations_to_threshold < 0) {
        std::printf("check failed: seed %llu never exceeded %.3f\n",
                    static_cast<unsigned long long>(s.seed), cfg.threshold);
        return kExitCheckFailed;
      }
    }
  }
  return kExitOk;
}

int cmd_ablate(const CampaignConfig& cfg, bool check) {
  const AblationResult result = ablate(cfg);
  emit_campaign_files(cfg, result.arms);

  // Table-style mean/max of the common-metric best outcomes.
  std::ofstream table(cfg.out_dir + "/ablation_table.txt");
  table << "arm mean_best_common max_best_common\n";
  std::printf("%-8s %12s %12s\n", "arm", "mean", "max");
  for (const auto& campaign : result.arms) {
    std::printf("%-8s %12.4f %12.4f\n", to_string(campaign.arm).c_str(),
                campaign.mean_best_common(), campaign.max_best_common());
    table << to_string(campaign.arm) << ' ' << campaign.mean_best_common()
          << ' ' << campaign.max_best_common() << '\n';
  }
  std::printf("ordering gr>ar>cp>simple: %s (gr-simple gap %.4f)\n",
              result.ordering_holds ? "yes" : "no", result.gr_simple_gap);
  table << "ordering_holds " << (result.ordering_holds ? 1 : 0) << '\n';
  table << "gr_simple_gap " << result.gr_simple_gap << '\n';
  if (check && !result.ordering_holds) return kExitCheckFailed;
  return kExitOk;
}

int cmd_metric_sweep(const CampaignConfig& cfg, bool check) {
  const MetricSweepResult result = metric_sweep(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream out(cfg.out_dir + "/metric_sweep.txt");
  out << "metric seed iterations_to_threshold reached proxy_success\n";
  for (const auto& row : result.rows)
    out << "w" << row.metric + 1 << " " << row.seed << ' '
        << row.iterations_to_threshold << ' ' << row.reached << ' '
        << row.proxy_success << '\n';
  std::printf("%-6s %18s %9s %9s\n", "metric", "mean_iters_to_thr", "failures",
              "successes");
  for (int m = 0; m < 4; ++m) {
    std::printf("w%d=1   %18.2f %9d %9d\n", m + 1, result.mean_iterations[m],
                result.failure_counts[m], result.success_counts[m]);
    out << "summary w" << m + 1 << " mean_iters "
        << result.mean_iterations[m] << " failures "
        << result.failure_counts[m] << " successes "
        << result.success_counts[m] << '\n';
  }
  if (check) {
    for (int m = 0; m < 4; ++m)
      if (result.failure_counts[m] ==
          static_cast<int>(cfg.seeds.size()))
        return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_derive_weights(const std::string& counts_csv) {
  std::array<int, 4> counts{};
  std::stringstream ss(counts_csv);
  std::string tok;
  int i = 0;
  while (std::getline(ss, tok, ',') && i < 4) counts[i++] = std::stoi(tok);
  if (i != 4) throw ConfigError("--counts needs four comma-separated values");
  const MetricWeights w = derive_weights(counts);
  std::printf("weights: %.17g %.17g %.17g %.17g\n", w.w1, w.w2, w.w3, w.w4);
  return kExitOk;
}

int cmd_report(const std::string& dir, double threshold) {
  const auto summaries = summarize_csv_dir(dir, threshold < 0 ? 0.5 : threshold);
  for (const auto& s : summaries)
    std::printf("%s best_y=%.6f best_common=%.6f iters_to_threshold=%d\n",
                s.file.c_str(), s.best_y, s.best_common,
                s.iterations_to_threshold);
  std::printf("files=%zu\n", summaries.size());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grasp-pose Bayesian optimization campaigns"};
  app.require_subcommand(1);

  std::string config_path, seeds_csv, out_dir, arm, counts_csv, report_dir;
  double threshold = -1.0;
  bool check = false;

  auto add_common = [&](CLI::App* cmd, bool needs_config = true) {
    if (needs_config)
      cmd->add_option("--config", config_path, "campaign config JSON")
          ->required();
    cmd->add_option("--seeds", seeds_csv, "comma-separated seed list");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--threshold", threshold, "outcome threshold");
    cmd->add_flag("--check", check, "exit 3 when the built-in check fails");
  };

  CLI::App* run = app.add_subcommand("run", "single-arm campaign");
  add_common(run);
  run->add_option("--arm", arm, "evaluation arm: simple|cp|ar|gr");

  CLI::App* ab = app.add_subcommand("ablate", "multi-arm comparison");
  add_common(ab);

  CLI::App* sweep =
      app.add_subcommand("metric-sweep", "four campaigns with w_i = 1");
  add_common(sweep);

  CLI::App* weights =
      app.add_subcommand("derive-weights", "weights from success counts");
  weights->add_option("--counts", counts_csv, "s1,s2,s3,s4")->required();

  CLI::App* report =
      app.add_subcommand("report", "recompute summaries from CSVs");
  report->add_option("--dir", report_dir, "directory of history CSVs")
      ->required();
  report->add_option("--threshold", threshold, "outcome threshold");

  CLI11_PARSE(app, argc, argv);

  try {
    if (weights->parsed()) return cmd_derive_weights(counts_csv);
    if (report->parsed()) return cmd_report(report_dir, threshold);

    CampaignConfig cfg = load_config(config_path);
    apply_overrides(cfg, seeds_csv, out_dir, arm, threshold);
    if (run->parsed()) return cmd_run(cfg, check);
    if (ab->parsed()) return cmd_ablate(cfg, check);
    if (sweep->parsed()) return cmd_metric_sweep(cfg, check);
  } catch (const graspbo::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kExitOk;
}
