#include "graspbo/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace graspbo {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void reject_unknown(const json& j, const std::vector<std::string>& known,
                    const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

Pose6 parse_pose(const json& j, const std::string& where) {
  reject_unknown(j, {"position", "rpy"}, where);
  Pose6 pose;
  if (j.contains("position")) {
    const auto& p = j.at("position");
    pose.position = {p.at(0).get<double>(), p.at(1).get<double>(),
                     p.at(2).get<double>()};
  }
  if (j.contains("rpy")) {
    const auto& r = j.at("rpy");
    pose.orientation =
        Eigen::AngleAxisd(r.at(2).get<double>(), Eigen::Vector3d::UnitZ()) *
        Eigen::AngleAxisd(r.at(1).get<double>(), Eigen::Vector3d::UnitY()) *
        Eigen::AngleAxisd(r.at(0).get<double>(), Eigen::Vector3d::UnitX());
  }
  return pose;
}

ShapePrimitive parse_primitive(const json& j) {
  reject_unknown(j, {"kind", "dimensions", "pose"}, "object primitive");
  const std::string kind = j.at("kind").get<std::string>();
  const auto& dims = j.at("dimensions");
  Pose6 pose;
  if (j.contains("pose")) pose = parse_pose(j.at("pose"), "primitive pose");
  if (kind == "sphere")
    return ShapePrimitive::sphere(dims.at(0).get<double>(), pose);
  if (kind == "box")
    return ShapePrimitive::box({dims.at(0).get<double>(),
                                dims.at(1).get<double>(),
                                dims.at(2).get<double>()},
                               pose);
  if (kind == "cylinder")
    return ShapePrimitive::cylinder(dims.at(0).get<double>(),
                                    dims.at(1).get<double>(), pose);
  if (kind == "capsule")
    return ShapePrimitive::capsule(dims.at(0).get<double>(),
                                   dims.at(1).get<double>(), pose);
  throw ConfigError("unknown primitive kind: " + kind);
}

}  // namespace

ObjectModel CampaignConfig::build_object() const {
  if (object_name == "custom") {
    if (custom_primitives.empty())
      throw ConfigError("custom object requires primitives");
    return ObjectModel::from_primitives(custom_primitives);
  }
  return make_object(object_name);
}

Scene CampaignConfig::build_scene() const {
  Scene scene = Scene::standard(build_object(), table_height);
  if (!capability_map_path.empty())
    scene.capability = CapabilityMap::load_csv(capability_map_path);
  return scene;
}

CampaignConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }

  CampaignConfig cfg;
  reject_unknown(
      j,
      {"object", "primitives", "table_height", "capability_map", "arm",
       "arms", "weights", "lambda", "alpha", "friction", "metrics", "noise",
       "normalization", "n0", "iters", "seeds", "threshold", "gp",
       "acquisition", "proxy", "out", "workers", "hand", "pregrasp_offset",
       "palm_clearance"},
      "config root");

  if (j.contains("object")) cfg.object_name = j.at("object").get<std::string>();
  if (j.contains("primitives")) {
    for (const auto& p : j.at("primitives"))
      cfg.custom_primitives.push_back(parse_primitive(p));
  }
  if (j.contains("table_height"))
    cfg.table_height = j.at("table_height").get<double>();
  if (j.contains("capability_map"))
    cfg.capability_map_path = j.at("capability_map").get<std::string>();
  if (j.contains("arm"))
    cfg.arm = arm_from_string(j.at("arm").get<std::string>());
  if (j.contains("arms")) {
    cfg.arms.clear();
    for (const auto& a : j.at("arms"))
      cfg.arms.push_back(arm_from_string(a.get<std::string>()));
  }
  if (j.contains("weights")) {
    const auto& w = j.at("weights");
    cfg.trial.weights = MetricWeights::from_array(
        {w.at(0).get<double>(), w.at(1).get<double>(), w.at(2).get<double>(),
         w.at(3).get<double>()});
  }
  if (j.contains("lambda"))
    cfg.trial.heuristics.lambda = j.at("lambda").get<double>();
  if (j.contains("alpha"))
    cfg.trial.heuristics.alpha = j.at("alpha").get<double>();
  if (j.contains("friction")) {
    const auto& f = j.at("friction");
    reject_unknown(f, {"mu", "cone_edges"}, "friction");
    if (f.contains("mu")) cfg.trial.friction.mu = f.at("mu").get<double>();
    if (f.contains("cone_edges"))
      cfg.trial.friction.cone_edges = f.at("cone_edges").get<int>();
  }
  if (j.contains("metrics")) {
    const auto& m = j.at("metrics");
    reject_unknown(m, {"max_exact_points", "epsilon_dirs", "volume_samples"},
                   "metrics");
    if (m.contains("max_exact_points"))
      cfg.trial.metrics.max_exact_points = m.at("max_exact_points").get<int>();
    if (m.contains("epsilon_dirs"))
      cfg.trial.metrics.epsilon_dirs = m.at("epsilon_dirs").get<int>();
    if (m.contains("volume_samples"))
      cfg.trial.metrics.volume_samples = m.at("volume_samples").get<int>();
  }
  if (j.contains("noise")) {
    const auto& n = j.at("noise");
    reject_unknown(n, {"sigma_pos", "sigma_ang", "sigma_y"}, "noise");
    if (n.contains("sigma_pos"))
      cfg.trial.noise.sigma_pos = n.at("sigma_pos").get<double>();
    if (n.contains("sigma_ang"))
      cfg.trial.noise.sigma_ang = n.at("sigma_ang").get<double>();
    if (n.contains("sigma_y"))
      cfg.trial.noise.sigma_y = n.at("sigma_y").get<double>();
  }
  if (j.contains("normalization")) {
    const auto& n = j.at("normalization");
    reject_unknown(n, {"mode", "calibration_trials"}, "normalization");
    if (n.contains("mode")) {
      const std::string mode = n.at("mode").get<std::string>();
      if (mode == "fixed")
        cfg.norm_mode = NormalizationState::Mode::Fixed;
      else if (mode == "running")
        cfg.norm_mode = NormalizationState::Mode::Running;
      else
        throw ConfigError("normalization mode must be fixed or running");
    }
    if (n.contains("calibration_trials"))
      cfg.calibration_trials = n.at("calibration_trials").get<int>();
  }
  if (j.contains("n0")) cfg.n0 = j.at("n0").get<int>();
  if (j.contains("iters")) cfg.iters = j.at("iters").get<int>();
  if (j.contains("seeds")) {
    cfg.seeds.clear();
    for (const auto& s : j.at("seeds"))
      cfg.seeds.push_back(s.get<std::uint64_t>());
  }
  if (j.contains("threshold")) cfg.threshold = j.at("threshold").get<double>();
  if (j.contains("gp")) {
    const auto& g = j.at("gp");
    reject_unknown(g,
                   {"kernel", "samples", "refit_every", "burn_in",
                    "warm_burn_in", "learn_noise", "fixed_noise"},
                   "gp");
    if (g.contains("kernel")) {
      const std::string k = g.at("kernel").get<std::string>();
      if (k == "matern52")
        cfg.gp.kernel = KernelFamily::Matern52Ard;
      else if (k == "squared_exponential")
        cfg.gp.kernel = KernelFamily::SquaredExponentialArd;
      else
        throw ConfigError("unknown gp kernel: " + k);
    }
    if (g.contains("samples")) cfg.gp.hyper_samples = g.at("samples").get<int>();
    if (g.contains("refit_every"))
      cfg.gp.refit_every = g.at("refit_every").get<int>();
    if (g.contains("burn_in")) cfg.gp.burn_in = g.at("burn_in").get<int>();
    if (g.contains("warm_burn_in"))
      cfg.gp.warm_burn_in = g.at("warm_burn_in").get<int>();
    if (g.contains("learn_noise"))
      cfg.gp.learn_noise = g.at("learn_noise").get<bool>();
    if (g.contains("fixed_noise"))
      cfg.gp.fixed_noise_variance = g.at("fixed_noise").get<double>();
  }
  if (j.contains("acquisition")) {
    const auto& a = j.at("acquisition");
    reject_unknown(a, {"candidates", "refine_top", "nm_iters"}, "acquisition");
    if (a.contains("candidates"))
      cfg.acquisition.candidates = a.at("candidates").get<int>();
    if (a.contains("refine_top"))
      cfg.acquisition.refine_top = a.at("refine_top").get<int>();
    if (a.contains("nm_iters"))
      cfg.acquisition.nm_iters = a.at("nm_iters").get<int>();
  }
  if (j.contains("proxy")) {
    const auto& p = j.at("proxy");
    reject_unknown(p, {"trials", "min_epsilon", "closure_rate"}, "proxy");
    if (p.contains("trials")) cfg.proxy.trials = p.at("trials").get<int>();
    if (p.contains("min_epsilon"))
      cfg.proxy.min_epsilon = p.at("min_epsilon").get<double>();
    if (p.contains("closure_rate"))
      cfg.proxy.closure_rate = p.at("closure_rate").get<double>();
  }
  if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
  if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
  if (j.contains("hand")) {
    const auto& h = j.at("hand");
    reject_unknown(h,
                   {"proximal_length", "distal_length", "proximal_radius",
                    "distal_radius", "fingertip_radius", "base_radius",
                    "proximal_limit", "distal_limit"},
                   "hand");
    HandModel hand = HandModel::default_model();
    for (auto& f : hand.fingers) {
      if (h.contains("proximal_length"))
        f.proximal_length = h.at("proximal_length").get<double>();
      if (h.contains("distal_length"))
        f.distal_length = h.at("distal_length").get<double>();
      if (h.contains("proximal_radius"))
        f.proximal_radius = h.at("proximal_radius").get<double>();
      if (h.contains("distal_radius"))
        f.distal_radius = h.at("distal_radius").get<double>();
      if (h.contains("proximal_limit"))
        f.proximal_limit = h.at("proximal_limit").get<double>();
      if (h.contains("distal_limit"))
        f.distal_limit = h.at("distal_limit").get<double>();
    }
    if (h.contains("fingertip_radius"))
      hand.fingertip_radius = h.at("fingertip_radius").get<double>();
    if (h.contains("base_radius")) {
      const double r = h.at("base_radius").get<double>();
      for (int f = 0; f < 3; ++f) {
        const double psi = 2.0 * M_PI * f / 3.0;
        hand.fingers[f].base.position =
            Eigen::Vector3d(r * std::cos(psi), r * std::sin(psi), 0.0);
      }
    }
    cfg.hand = hand;
  }
  if (j.contains("pregrasp_offset"))
    cfg.trial.pregrasp_offset = j.at("pregrasp_offset").get<double>();
  if (j.contains("palm_clearance"))
    cfg.trial.palm_clearance = j.at("palm_clearance").get<double>();

  if (cfg.n0 < 1) throw ConfigError("n0 must be >= 1");
  if (cfg.iters < 0) throw ConfigError("iters must be >= 0");
  if (cfg.seeds.empty()) throw ConfigError("seeds must be non-empty");
  cfg.trial.weights.validate();
  return cfg;
}

double common_metric(const EvalRecord& r) {
  return r.q_c * r.quality.q_f * r.quality.q_eps;
}

double CampaignResult::mean_best_common() const {
  double total = 0.0;
  for (const auto& s : seeds) total += s.best_common;
  return seeds.empty() ? 0.0 : total / seeds.size();
}

double CampaignResult::max_best_common() const {
  double best = 0.0;
  for (const auto& s : seeds) best = std::max(best, s.best_common);
  return best;
}

double CampaignResult::mean_best_y() const {
  double total = 0.0;
  for (const auto& s : seeds) total += s.best_y;
  return seeds.empty() ? 0.0 : total / seeds.size();
}

int CampaignResult::proxy_success_count() const {
  int n = 0;
  for (const auto& s : seeds) n += s.proxy_success ? 1 : 0;
  return n;
}

SeedResult run_seed(const CampaignConfig& config, EvalArm arm,
                    std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  const Scene scene = config.build_scene();
  const HandModel& hand = config.hand;
  TrialConfig trial = config.trial;
  trial.arm = arm;
  const Bounds bounds = pose_bounds(scene.object, hand, scene.table_height,
                                    trial.palm_clearance);

  NormalizationState norm(NormalizationState::Mode::Running);
  if (config.norm_mode == NormalizationState::Mode::Fixed) {
    // Calibration pre-pass: random trials establish fixed metric bounds so
    // the objective stays stationary during the campaign. Arm-independent.
    Rng cal_rng(seed ^ 0x9e3779b97f4a7c15ull);
    for (int t = 0; t < config.calibration_trials; ++t) {
      Eigen::Vector4d u;
      for (int j = 0; j < 4; ++j) u[j] = cal_rng.uniform();
      (void)execute_grasp(scene, hand, bounds.denormalize(u), trial, norm,
                          cal_rng);
    }
    norm.freeze();
  }

  Rng eval_rng(seed ^ 0xe7a1e7a1e7a1e7a1ull);
  const Evaluator evaluator = [&](const GraspPose& pose) {
    return execute_grasp(scene, hand, pose, trial, norm, eval_rng);
  };

  BoConfig bo;
  bo.gp = config.gp;
  bo.acquisition = config.acquisition;
  Rng loop_rng(seed);
  SeedResult result;
  result.seed = seed;
  result.arm = arm;
  result.history = optimize(evaluator, bounds, config.n0, config.iters, bo,
                            loop_rng);

  result.best_y = result.history.incumbent();
  for (const auto& e : result.history.entries) {
    result.best_common = std::max(result.best_common, common_metric(e.record));
    if (result.iterations_to_threshold < 0 &&
        e.record.y > config.threshold)
      result.iterations_to_threshold = e.iteration;
  }
  const EvalRecord* best = result.history.best_record();
  if (best && !best->contacts.empty()) {
    Rng proxy_rng(seed ^ 0x590c0de5ull);
    result.proxy_success =
        success_proxy(*best, scene, trial, config.proxy, proxy_rng);
  }
  result.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return result;
}

CampaignResult run_campaign(const CampaignConfig& config, EvalArm arm) {
  CampaignResult result;
  result.arm = arm;
  const int n = static_cast<int>(config.seeds.size());
  const int workers =
      config.workers > 0
          ? config.workers
          : std::max(1u, std::thread::hardware_concurrency());
  result.seeds.resize(n);
  std::vector<std::future<void>> pending;
  std::atomic<int> next{0};
  for (int w = 0; w < std::min(workers, n); ++w) {
    pending.push_back(std::async(std::launch::async, [&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
        result.seeds[i] = run_seed(config, arm, config.seeds[i]);
    }));
  }
  for (auto& f : pending) f.get();
  return result;
}

void write_history_csv(const std::string& path, const SeedResult& result) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write CSV: " + path);
  out << "# schema graspbo.history.v1\n";
  out << "iteration,x,y,z,roll,q_c,reason,n_j,n_c,q_iso_raw,q_eps_raw,"
         "q_v_raw,q_uni_raw,q_iso,q_eps,q_v,q_uni,q_f,Q_m,AR,CR,y,incumbent\n";
  for (const auto& e : result.history.entries) {
    const EvalRecord& r = e.record;
    out << e.iteration << ',' << fmt_double(r.pose.x) << ','
        << fmt_double(r.pose.y) << ',' << fmt_double(r.pose.z) << ','
        << fmt_double(r.pose.roll) << ',' << r.q_c << ','
        << to_string(r.reason) << ',' << r.n_j << ',' << r.n_c << ','
        << fmt_double(r.quality.q_iso_raw) << ','
        << fmt_double(r.quality.q_eps_raw) << ','
        << fmt_double(r.quality.q_v_raw) << ','
        << fmt_double(r.quality.q_uni_raw) << ','
        << fmt_double(r.quality.q_iso) << ',' << fmt_double(r.quality.q_eps)
        << ',' << fmt_double(r.quality.q_v) << ','
        << fmt_double(r.quality.q_uni) << ',' << r.quality.q_f << ','
        << fmt_double(r.q_m) << ',' << fmt_double(r.ar) << ','
        << fmt_double(r.cr) << ',' << fmt_double(r.y) << ','
        << fmt_double(e.incumbent) << '\n';
  }
}

History read_history_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read CSV: " + path);
  std::string line;
  std::getline(in, line);  // schema comment
  if (line.rfind("# schema graspbo.history.v1", 0) != 0)
    throw Error("unexpected CSV schema in " + path);
  std::getline(in, line);  // column header
  History history;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 23) throw Error("malformed CSV row in " + path);
    HistoryEntry e;
    EvalRecord& r = e.record;
    e.iteration = std::stoi(fields[0]);
    r.pose = {std::stod(fields[1]), std::stod(fields[2]),
              std::stod(fields[3]), std::stod(fields[4])};
    r.q_c = std::stoi(fields[5]);
    r.reason = fields[6] == "ok"                  ? TrialReason::Ok
               : fields[6] == "unreachable"       ? TrialReason::Unreachable
               : fields[6] == "workbench_collision"
                   ? TrialReason::WorkbenchCollision
                   : TrialReason::EvaluatorError;
    r.n_j = std::stoi(fields[7]);
    r.n_c = std::stoi(fields[8]);
    r.quality.q_iso_raw = std::stod(fields[9]);
    r.quality.q_eps_raw = std::stod(fields[10]);
    r.quality.q_v_raw = std::stod(fields[11]);
    r.quality.q_uni_raw = std::stod(fields[12]);
    r.quality.q_iso = std::stod(fields[13]);
    r.quality.q_eps = std::stod(fields[14]);
    r.quality.q_v = std::stod(fields[15]);
    r.quality.q_uni = std::stod(fields[16]);
    r.quality.q_f = std::stoi(fields[17]);
    r.q_m = std::stod(fields[18]);
    r.ar = std::stod(fields[19]);
    r.cr = std::stod(fields[20]);
    r.y = std::stod(fields[21]);
    e.incumbent = std::stod(fields[22]);
    history.entries.push_back(std::move(e));
  }
  return history;
}

double ci95_half_width(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= values.size();
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= (values.size() - 1);
  return 1.96 * std::sqrt(var / values.size());
}

std::vector<CurvePoint> common_metric_curve(const CampaignResult& result) {
  std::vector<CurvePoint> curve;
  if (result.seeds.empty()) return curve;
  const size_t iters = result.seeds.front().history.entries.size();
  std::vector<double> running(result.seeds.size(), 0.0);
  for (size_t t = 0; t < iters; ++t) {
    std::vector<double> values;
    values.reserve(result.seeds.size());
    for (size_t s = 0; s < result.seeds.size(); ++s) {
      const auto& entries = result.seeds[s].history.entries;
      if (t < entries.size())
        running[s] = std::max(running[s], common_metric(entries[t].record));
      values.push_back(running[s]);
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= values.size();
    const double hw = ci95_half_width(values);
    curve.push_back({static_cast<int>(t + 1), mean, mean - hw, mean + hw});
  }
  return curve;
}

void write_curve(const std::string& path, const std::vector<CurvePoint>& c) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write curve: " + path);
  out << "iteration mean ci_lo ci_hi\n";
  for (const auto& p : c)
    out << p.iteration << ' ' << fmt_double(p.mean) << ' '
        << fmt_double(p.ci_lo) << ' ' << fmt_double(p.ci_hi) << '\n';
}

AblationResult ablate(const CampaignConfig& config) {
  if (config.arms.size() < 2)
    throw ConfigError("ablate needs at least two arms");
  AblationResult result;
  for (EvalArm arm : config.arms)
    result.arms.push_back(run_campaign(config, arm));

  auto mean_of = [&](EvalArm arm) -> double {
    for (const auto& c : result.arms)
      if (c.arm == arm) return c.mean_best_common();
    return -1.0;
  };
  const double simple = mean_of(EvalArm::Simple);
  const double cp = mean_of(EvalArm::Cp);
  const double ar = mean_of(EvalArm::Ar);
  const double gr = mean_of(EvalArm::Gr);
  if (simple >= 0 && cp >= 0 && ar >= 0 && gr >= 0) {
    result.ordering_holds = gr > ar && ar > cp && cp > simple;
    result.gr_simple_gap = gr - simple;
  }
  return result;
}

MetricSweepResult metric_sweep(const CampaignConfig& config) {
  MetricSweepResult result;
  for (int metric = 0; metric < 4; ++metric) {
    CampaignConfig cfg = config;
    cfg.trial.weights = MetricWeights::single(metric);
    const CampaignResult campaign = run_campaign(cfg, EvalArm::Gr);
    double iter_total = 0.0;
    int reached = 0;
    for (const auto& s : campaign.seeds) {
      MetricSweepRow row;
      row.metric = metric;
      row.seed = s.seed;
      row.iterations_to_threshold = s.iterations_to_threshold;
      row.reached = s.iterations_to_threshold >= 0;
      row.proxy_success = s.proxy_success;
      row.wall_ms = s.wall_ms;
      result.rows.push_back(row);
      if (row.reached) {
        ++reached;
        iter_total += row.iterations_to_threshold;
      } else {
        ++result.failure_counts[metric];
      }
      if (row.proxy_success) ++result.success_counts[metric];
    }
    result.mean_iterations[metric] = reached > 0 ? iter_total / reached : -1.0;
  }
  return result;
}

MetricWeights derive_weights(const std::array<int, 4>& success_counts) {
  long total = 0;
  for (int c : success_counts) {
    if (c < 0) throw Error("success counts must be non-negative");
    total += c;
  }
  if (total == 0) throw AllZero("no successful grasps to derive weights from");
  return MetricWeights{
      static_cast<double>(success_counts[0]) / total,
      static_cast<double>(success_counts[1]) / total,
      static_cast<double>(success_counts[2]) / total,
      static_cast<double>(success_counts[3]) / total};
}

std::vector<CsvSummary> summarize_csv_dir(const std::string& dir,
                                          double threshold) {
  std::vector<std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".csv") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<CsvSummary> out;
  for (const auto& f : files) {
    const History h = read_history_csv(f);
    CsvSummary s;
    s.file = f;
    for (const auto& e : h.entries) {
      s.best_y = std::max(s.best_y, e.record.y);
      s.best_common = std::max(s.best_common, common_metric(e.record));
      if (s.iterations_to_threshold < 0 && e.record.y > threshold)
        s.iterations_to_threshold = e.iteration;
    }
    out.push_back(std::move(s));
  }
  return out;
}

void write_report_jsonl(const std::string& path,
                        const std::vector<CampaignResult>& results) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write report: " + path);
  for (const auto& campaign : results) {
    for (const auto& s : campaign.seeds) {
      json row;
      row["type"] = "seed";
      row["arm"] = to_string(campaign.arm);
      row["seed"] = s.seed;
      row["trials"] = s.history.entries.size();
      row["best_y"] = s.best_y;
      row["best_common"] = s.best_common;
      row["iterations_to_threshold"] = s.iterations_to_threshold;
      row["proxy_success"] = s.proxy_success;
      row["wall_ms"] = s.wall_ms;
      out << row.dump() << '\n';
    }
    json sum;
    sum["type"] = "summary";
    sum["arm"] = to_string(campaign.arm);
    sum["seeds"] = campaign.seeds.size();
    sum["mean_best_common"] = campaign.mean_best_common();
    sum["max_best_common"] = campaign.max_best_common();
    sum["mean_best_y"] = campaign.mean_best_y();
    sum["proxy_success_count"] = campaign.proxy_success_count();
    out << sum.dump() << '\n';
  }
}

}  // namespace graspbo
