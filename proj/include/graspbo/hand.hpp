#pragma once

#include <Eigen/Dense>
#include <array>

#include "graspbo/contact.hpp"
#include "graspbo/geom.hpp"

namespace graspbo {

inline constexpr double kContactTol = 1e-4;      // m
inline constexpr double kPenetrationTol = 1e-4;  // m
inline constexpr int kBisectIters = 30;

/// Two-link finger: a proximal and a distal capsule, both joints rotating
/// about the base-frame Y axis so positive angles curl the tip toward the
/// palm axis.
struct FingerGeometry {
  Pose6 base;  // palm -> finger base; local +Z points along the open finger
  double proximal_length = 0.05;
  double proximal_radius = 0.012;
  double distal_length = 0.04;
  double distal_radius = 0.010;
  double proximal_limit = 1.4;  // rad
  double distal_limit = 1.4;    // rad
};

/// Simplified 3-finger hand. The palm is a disc in the local XY plane;
/// local +Z is the approach axis. Link ids: 0 palm, then per finger f:
/// 1 + 2f proximal, 2 + 2f distal (the fingertip sphere belongs to the
/// distal link).
struct HandModel {
  std::array<FingerGeometry, 3> fingers;
  double fingertip_radius = 0.012;
  double palm_radius = 0.055;
  double palm_half_thickness = 0.015;

  /// Max reach beyond the palm: proximal + distal + fingertip radius.
  double finger_size() const;

  static HandModel default_model();
};

/// Joint angles ordered (finger, joint): f0 proximal, f0 distal, f1 ...
struct JointConfig {
  Eigen::Matrix<double, 6, 1> angles = Eigen::Matrix<double, 6, 1>::Zero();

  static JointConfig zeros() { return {}; }
  static JointConfig closed(const HandModel& hand);
};

/// Forward kinematics of the three fingertip frames (world).
/// Throws JointLimit if q violates its limits.
std::array<Pose6, 3> fingertip_poses(const HandModel& hand, const Pose6& palm,
                                     const JointConfig& q);

struct CloseResult {
  JointConfig joints;
  ContactSet contacts;  // fingertip contacts only
};

/// Geometric finger closing: each finger's joints advance proportionally
/// until the fingertip sphere surface is within kContactTol of the object
/// (bisection-refined) or the joint limits are reached. Fingers reaching
/// the limit contribute no contact.
CloseResult close_fingers(const HandModel& hand, const Pose6& palm,
                          const ObjectModel& object);

/// Number of hand links (palm + 6 finger links) whose interior intersects
/// the object deeper than kPenetrationTol, at the given configuration.
int link_collision_count(const HandModel& hand, const Pose6& palm,
                         const JointConfig& q, const ObjectModel& object);

/// True iff any part of the hand dips below the plane z = height.
bool below_plane(const HandModel& hand, const Pose6& palm,
                 const JointConfig& q, double height);

/// Contact-point Jacobian (3k x 6): stacked world velocities of the contact
/// points per unit joint rate. Columns of joints on other fingers are zero.
/// Throws EmptyContacts when k = 0.
Eigen::MatrixXd hand_jacobian(const HandModel& hand, const Pose6& palm,
                              const JointConfig& q, const ContactSet& contacts);

}  // namespace graspbo
