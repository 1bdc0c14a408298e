#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "graspbo/geom.hpp"
#include "graspbo/hand.hpp"
#include "graspbo/record.hpp"

namespace graspbo {

/// Voxelized workspace annotated with a dexterity index in [0, 1]; poses in
/// voxels at or above `threshold` count as reachable, everything off-grid
/// does not.
struct CapabilityMap {
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();  // min corner
  double resolution = 0.05;                          // m per voxel
  int nx = 0, ny = 0, nz = 0;
  std::vector<double> values;  // x-major, then y, then z
  double threshold = 0.1;

  double index_at(const Eigen::Vector3d& p) const;  // 0 outside the grid

  /// Smooth radial bump: index = max(0, 1 - (|p-c|/radius)^2), zero outside
  /// the workspace sphere. The grid covers the sphere's bounding box.
  static CapabilityMap radial(const Eigen::Vector3d& center, double radius,
                              double resolution, double threshold = 0.1);

  void save_csv(const std::string& path) const;
  static CapabilityMap load_csv(const std::string& path);
};

struct Scene {
  ObjectModel object;
  double table_height = 0.0;
  CapabilityMap capability;

  /// Object on the bench with the default radial capability map centered
  /// slightly above the object.
  static Scene standard(ObjectModel object, double table_height = 0.0);
};

enum class EvalArm { Simple, Cp, Ar, Gr };

EvalArm arm_from_string(const std::string& s);
std::string to_string(EvalArm arm);

struct NoiseConfig {
  double sigma_pos = 0.0;  // m, contact position noise
  double sigma_ang = 0.0;  // rad, contact normal noise
  double sigma_y = 0.0;    // outcome observation noise
};

/// Everything one grasp trial needs besides the scene and the pose.
struct TrialConfig {
  EvalArm arm = EvalArm::Gr;
  MetricWeights weights;  // defaults to w2 = 1
  HeuristicParams heuristics;
  FrictionModel friction;
  MetricsConfig metrics;
  NoiseConfig noise;
  double pregrasp_offset = 0.10;  // m, retreat along local -Z
  double palm_clearance = 0.02;   // m, z lower bound above the bench
};

/// Pose box: object AABB grown by the finger size per axis, z clamped to
/// the bench plus palm clearance, roll in [-pi, pi).
Bounds pose_bounds(const ObjectModel& object, const HandModel& hand,
                   double table_height = 0.0, double palm_clearance = 0.02);

bool reachable(const CapabilityMap& map, const Pose6& pose);

struct CollisionClass {
  FeasibilityResult feasibility;
  int n_j = 0;
};

/// Workbench contact invalidates the pose; object overlap only counts links
/// (it feeds the approximation reward).
CollisionClass classify_collision(const Scene& scene, const HandModel& hand,
                                  const Pose6& palm);

/// Straight-line approach from the retreat pose, sampled at 1 cm steps;
/// infeasible iff a step (or the retreat pose itself) hits the workbench.
/// Contact with the object along the way is allowed.
bool pregrasp_approach(const Scene& scene, const HandModel& hand,
                       const Pose6& target, double offset);

/// The full trial pipeline: alignment, reachability, approach, collision
/// classification, finger closing, contact perturbation, metrics,
/// normalization, and the arm-specific outcome. Never throws; every failure
/// mode is a y = 0 record with a reason. Raw metric values are reported to
/// `norm` (running mode) after evaluation.
EvalRecord execute_grasp(const Scene& scene, const HandModel& hand,
                         const GraspPose& pose, const TrialConfig& config,
                         NormalizationState& norm, Rng& rng);

struct ProxyConfig {
  int trials = 20;
  double min_epsilon = 0.05;
  double closure_rate = 0.9;
};

/// Robustness stand-in for a physical lift test: re-perturb the recorded
/// contacts and demand closure in >= closure_rate of trials plus a median
/// epsilon quality above min_epsilon. Throws NoContacts.
bool success_proxy(const EvalRecord& record, const Scene& scene,
                   const TrialConfig& config, const ProxyConfig& proxy,
                   Rng& rng);

}  // namespace graspbo
