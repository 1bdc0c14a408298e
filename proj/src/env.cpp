#include "graspbo/env.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace graspbo {

double CapabilityMap::index_at(const Eigen::Vector3d& p) const {
  const Eigen::Vector3d rel = (p - origin) / resolution;
  const int ix = static_cast<int>(std::floor(rel.x()));
  const int iy = static_cast<int>(std::floor(rel.y()));
  const int iz = static_cast<int>(std::floor(rel.z()));
  if (ix < 0 || iy < 0 || iz < 0 || ix >= nx || iy >= ny || iz >= nz)
    return 0.0;
  return values[(iz * ny + iy) * nx + ix];
}

CapabilityMap CapabilityMap::radial(const Eigen::Vector3d& center,
                                    double radius, double resolution,
                                    double threshold) {
  CapabilityMap map;
  map.resolution = resolution;
  map.threshold = threshold;
  map.origin = center - Eigen::Vector3d::Constant(radius);
  map.nx = map.ny = map.nz =
      static_cast<int>(std::ceil(2.0 * radius / resolution)) + 1;
  map.values.resize(static_cast<size_t>(map.nx) * map.ny * map.nz, 0.0);
  for (int iz = 0; iz < map.nz; ++iz) {
    for (int iy = 0; iy < map.ny; ++iy) {
      for (int ix = 0; ix < map.nx; ++ix) {
        const Eigen::Vector3d voxel_center =
            map.origin +
            resolution * Eigen::Vector3d(ix + 0.5, iy + 0.5, iz + 0.5);
        const double r = (voxel_center - center).norm() / radius;
        map.values[(static_cast<size_t>(iz) * map.ny + iy) * map.nx + ix] =
            std::max(0.0, 1.0 - r * r);
      }
    }
  }
  return map;
}

void CapabilityMap::save_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write capability map: " + path);
  out << "# graspbo capability map v1\n";
  char header[256];
  std::snprintf(header, sizeof(header),
                "%.17g,%.17g,%.17g,%.17g,%d,%d,%d,%.17g\n", origin.x(),
                origin.y(), origin.z(), resolution, nx, ny, nz, threshold);
  out << header;
  for (double v : values) {
    char line[64];
    std::snprintf(line, sizeof(line), "%.17g\n", v);
    out << line;
  }
}

CapabilityMap CapabilityMap::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read capability map: " + path);
  std::string line;
  std::getline(in, line);  // comment header
  if (!std::getline(in, line))
    throw Error("capability map missing header: " + path);
  CapabilityMap map;
  std::replace(line.begin(), line.end(), ',', ' ');
  std::istringstream hs(line);
  if (!(hs >> map.origin.x() >> map.origin.y() >> map.origin.z() >>
        map.resolution >> map.nx >> map.ny >> map.nz >> map.threshold))
    throw Error("malformed capability map header: " + path);
  const size_t count = static_cast<size_t>(map.nx) * map.ny * map.nz;
  map.values.reserve(count);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    map.values.push_back(std::stod(line));
  }
  if (map.values.size() != count)
    throw Error("capability map value count mismatch: " + path);
  return map;
}

Scene Scene::standard(ObjectModel object, double table_height) {
  Scene scene;
  scene.table_height = table_height;
  const Eigen::Vector3d workspace_center =
      object.center + Eigen::Vector3d(0.0, 0.0, 0.02);
  scene.capability = CapabilityMap::radial(workspace_center, 0.30, 0.025);
  scene.object = std::move(object);
  return scene;
}

EvalArm arm_from_string(const std::string& s) {
  if (s == "simple") return EvalArm::Simple;
  if (s == "cp") return EvalArm::Cp;
  if (s == "ar") return EvalArm::Ar;
  if (s == "gr") return EvalArm::Gr;
  throw ConfigError("unknown arm: " + s);
}

std::string to_string(EvalArm arm) {
  switch (arm) {
    case EvalArm::Simple: return "simple";
    case EvalArm::Cp: return "cp";
    case EvalArm::Ar: return "ar";
    case EvalArm::Gr: return "gr";
  }
  return "gr";
}

Bounds pose_bounds(const ObjectModel& object, const HandModel& hand,
                   double table_height, double palm_clearance) {
  const double fs = hand.finger_size();
  Bounds b;
  b.lo.head<3>() = object.aabb.min - Eigen::Vector3d::Constant(fs);
  b.hi.head<3>() = object.aabb.max + Eigen::Vector3d::Constant(fs);
  b.lo[2] = std::max(b.lo[2], table_height + palm_clearance);
  b.lo[3] = -M_PI;
  b.hi[3] = M_PI;
  b.validate();
  return b;
}

bool reachable(const CapabilityMap& map, const Pose6& pose) {
  return map.index_at(pose.position) >= map.threshold;
}

CollisionClass classify_collision(const Scene& scene, const HandModel& hand,
                                  const Pose6& palm) {
  const JointConfig open = JointConfig::zeros();
  if (below_plane(hand, palm, open, scene.table_height))
    return {FeasibilityResult::fail(FeasibilityReason::WorkbenchCollision), 0};
  return {FeasibilityResult::ok(),
          link_collision_count(hand, palm, open, scene.object)};
}

bool pregrasp_approach(const Scene& scene, const HandModel& hand,
                       const Pose6& target, double offset) {
  const Eigen::Vector3d approach = target.axis_z();
  const Eigen::Vector3d start = target.position - offset * approach;
  const JointConfig open = JointConfig::zeros();
  const int steps = std::max(1, static_cast<int>(std::ceil(offset / 0.01)));
  for (int k = 0; k <= steps; ++k) {
    const Pose6 step{start + (offset * k / steps) * approach,
                     target.orientation};
    if (below_plane(hand, step, open, scene.table_height)) return false;
  }
  return true;
}

namespace {

double arm_outcome(const TrialConfig& cfg, const EvalRecord& r) {
  const double a = cfg.heuristics.alpha;
  switch (cfg.arm) {
    case EvalArm::Simple:
      return evaluate_simple(r.q_c, r.quality.q_f, r.q_m);
    case EvalArm::Cp:
      return evaluate_cp(r.q_c, r.quality.q_f, r.q_m, r.cp, a);
    case EvalArm::Ar:
      return evaluate_ar(r.q_c, r.quality.q_f, r.q_m, r.ar, a);
    case EvalArm::Gr:
      return evaluate_gr(r.q_c, r.q_m, r.ar, r.cr, a);
  }
  return 0.0;
}

}  // namespace

EvalRecord execute_grasp(const Scene& scene, const HandModel& hand,
                         const GraspPose& pose, const TrialConfig& config,
                         NormalizationState& norm, Rng& rng) {
  EvalRecord record;
  record.pose = pose;

  Pose6 palm;
  try {
    palm = align_to_center(pose.position(), pose.roll, scene.object.center);
  } catch (const DegeneratePose&) {
    record.q_c = 0;
    record.reason = TrialReason::Unreachable;
    return record;
  }

  if (!reachable(scene.capability, palm)) {
    record.q_c = 0;
    record.reason = TrialReason::Unreachable;
    return record;
  }

  if (!pregrasp_approach(scene, hand, palm, config.pregrasp_offset)) {
    record.q_c = 0;
    record.reason = TrialReason::WorkbenchCollision;
    return record;
  }

  const CollisionClass cc = classify_collision(scene, hand, palm);
  if (!cc.feasibility.q_c) {
    record.q_c = 0;
    record.reason = to_trial_reason(cc.feasibility.reason);
    return record;
  }
  record.q_c = 1;
  record.reason = TrialReason::Ok;
  record.n_j = cc.n_j;

  // Close regardless of object overlap at the open pose: collision and
  // contact states coexist, and both rewards feed the outcome.
  const CloseResult closed = close_fingers(hand, palm, scene.object);
  record.contacts = perturb_contacts(
      closed.contacts, {config.noise.sigma_pos, config.noise.sigma_ang}, rng);
  record.n_c = 0;
  for (const auto& c : record.contacts) record.n_c += c.fingertip ? 1 : 0;

  if (!record.contacts.empty()) {
    const double ts = scene.object.torque_scale();
    const WrenchSet wrenches = wrench_primitives(
        record.contacts, config.friction, scene.object.center, ts);
    record.quality.q_f = force_closure(wrenches);
    if (record.quality.q_f) {
      const GraspMatrix gm =
          grasp_matrix(record.contacts, scene.object.center, ts);
      record.quality.q_iso_raw = q_isotropy(gm);
      const Eigen::MatrixXd jac =
          hand_jacobian(hand, palm, closed.joints, record.contacts);
      record.quality.q_uni_raw = q_uniformity(jac);
      const EpsilonResult eps = q_epsilon(wrenches, config.metrics, rng);
      record.quality.q_eps_raw = eps.value;
      record.eps_exact = eps.exact_path;
      record.quality.q_v_raw =
          q_volume(wrenches, config.metrics.volume_samples, rng);
    }
  }

  norm.observe(0, record.quality.q_iso_raw);
  norm.observe(1, record.quality.q_eps_raw);
  norm.observe(2, record.quality.q_v_raw);
  norm.observe(3, record.quality.q_uni_raw);
  record.quality.q_iso = norm.normalize(0, record.quality.q_iso_raw);
  record.quality.q_eps = norm.normalize(1, record.quality.q_eps_raw);
  record.quality.q_v = norm.normalize(2, record.quality.q_v_raw);
  record.quality.q_uni = norm.normalize(3, record.quality.q_uni_raw);

  record.ar = approximation_reward(record.n_j, config.heuristics.lambda);
  record.cr = contact_reward(record.n_c, config.heuristics.lambda);
  record.cp = collision_penalty_baseline(record.n_j, config.heuristics.lambda);
  record.q_m =
      record.quality.q_f ? combine(record.quality, config.weights) : 0.0;

  record.y = arm_outcome(config, record);
  if (config.noise.sigma_y > 0.0) {
    record.y += rng.normal(0.0, config.noise.sigma_y);
    const double floor =
        config.arm == EvalArm::Cp ? -config.heuristics.alpha : 0.0;
    record.y = std::max(record.y, floor);
  }
  return record;
}

bool success_proxy(const EvalRecord& record, const Scene& scene,
                   const TrialConfig& config, const ProxyConfig& proxy,
                   Rng& rng) {
  if (record.contacts.empty()) throw NoContacts("success_proxy");
  const double ts = scene.object.torque_scale();
  int closures = 0;
  std::vector<double> epsilons;
  epsilons.reserve(proxy.trials);
  for (int t = 0; t < proxy.trials; ++t) {
    const ContactSet perturbed = perturb_contacts(
        record.contacts, {config.noise.sigma_pos, config.noise.sigma_ang},
        rng);
    const WrenchSet wrenches = wrench_primitives(
        perturbed, config.friction, scene.object.center, ts);
    const int fc = force_closure(wrenches);
    closures += fc;
    epsilons.push_back(fc ? q_epsilon(wrenches, config.metrics, rng).value
                          : 0.0);
  }
  std::sort(epsilons.begin(), epsilons.end());
  const double median = proxy.trials % 2 == 1
                            ? epsilons[proxy.trials / 2]
                            : 0.5 * (epsilons[proxy.trials / 2 - 1] +
                                     epsilons[proxy.trials / 2]);
  return closures >= proxy.closure_rate * proxy.trials - 1e-12 &&
         median >= proxy.min_epsilon;
}

}  // namespace graspbo
