#include "graspbo/hand.hpp"

#include <cmath>

namespace graspbo {

namespace {

Pose6 rot_y(double angle) {
  return {Eigen::Vector3d::Zero(),
          Eigen::Quaterniond(Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitY()))};
}

struct FingerFrames {
  Pose6 base;    // world
  Pose6 joint1;  // after proximal rotation
  Pose6 joint2;  // after distal rotation, at the distal link origin
  Pose6 tip;     // distal end
};

FingerFrames finger_frames(const HandModel& hand, const Pose6& palm, int f,
                           double q1, double q2) {
  const FingerGeometry& fg = hand.fingers[f];
  FingerFrames out;
  out.base = palm.compose(fg.base);
  out.joint1 = out.base.compose(rot_y(q1));
  out.joint2 = out.joint1
                   .compose(Pose6::translation({0, 0, fg.proximal_length}))
                   .compose(rot_y(q2));
  out.tip = out.joint2.compose(Pose6::translation({0, 0, fg.distal_length}));
  return out;
}

struct LinkSample {
  Eigen::Vector3d point;
  double radius;
};

void palm_samples(const HandModel& hand, const Pose6& palm,
                  std::vector<LinkSample>& out) {
  const double t = hand.palm_half_thickness;
  out.push_back({palm.position, t});
  for (double r : {0.5 * hand.palm_radius, hand.palm_radius - t}) {
    if (r <= 0) continue;
    for (int i = 0; i < 8; ++i) {
      const double a = 2.0 * M_PI * i / 8.0;
      out.push_back(
          {palm.apply({r * std::cos(a), r * std::sin(a), 0.0}), t});
    }
  }
}

void segment_samples(const Eigen::Vector3d& start, const Eigen::Vector3d& dir,
                     double length, double radius,
                     std::vector<LinkSample>& out) {
  for (int i = 0; i <= 4; ++i)
    out.push_back({start + (length * i / 4.0) * dir, radius});
}

std::vector<LinkSample> link_samples(const HandModel& hand, const Pose6& palm,
                                     const JointConfig& q, int link_id) {
  std::vector<LinkSample> out;
  if (link_id == 0) {
    palm_samples(hand, palm, out);
    return out;
  }
  const int f = (link_id - 1) / 2;
  const bool distal = (link_id - 1) % 2 == 1;
  const FingerGeometry& fg = hand.fingers[f];
  const FingerFrames fr =
      finger_frames(hand, palm, f, q.angles[2 * f], q.angles[2 * f + 1]);
  if (!distal) {
    segment_samples(fr.joint1.position, fr.joint1.axis_z(), fg.proximal_length,
                    fg.proximal_radius, out);
  } else {
    segment_samples(fr.joint2.position, fr.joint2.axis_z(), fg.distal_length,
                    fg.distal_radius, out);
    out.push_back({fr.tip.position, hand.fingertip_radius});
  }
  return out;
}

void check_limits(const HandModel& hand, const JointConfig& q) {
  for (int f = 0; f < 3; ++f) {
    const FingerGeometry& fg = hand.fingers[f];
    const double q1 = q.angles[2 * f], q2 = q.angles[2 * f + 1];
    if (q1 < -1e-12 || q1 > fg.proximal_limit + 1e-12 || q2 < -1e-12 ||
        q2 > fg.distal_limit + 1e-12)
      throw JointLimit("joint angle outside [0, q_max]");
  }
}

}  // namespace

double HandModel::finger_size() const {
  double best = 0.0;
  for (const auto& fg : fingers)
    best = std::max(best,
                    fg.proximal_length + fg.distal_length + fingertip_radius);
  return best;
}

HandModel HandModel::default_model() {
  HandModel hand;
  const double base_radius = 0.045;
  for (int f = 0; f < 3; ++f) {
    const double psi = 2.0 * M_PI * f / 3.0;
    const Eigen::Vector3d pos(base_radius * std::cos(psi),
                              base_radius * std::sin(psi), 0.0);
    // x points radially inward, z along the open finger (palm +Z).
    Eigen::Matrix3d R;
    R.col(0) = Eigen::Vector3d(-std::cos(psi), -std::sin(psi), 0.0);
    R.col(2) = Eigen::Vector3d::UnitZ();
    R.col(1) = R.col(2).cross(R.col(0));
    hand.fingers[f].base = {pos, Eigen::Quaterniond(R)};
  }
  return hand;
}

JointConfig JointConfig::closed(const HandModel& hand) {
  JointConfig q;
  for (int f = 0; f < 3; ++f) {
    q.angles[2 * f] = hand.fingers[f].proximal_limit;
    q.angles[2 * f + 1] = hand.fingers[f].distal_limit;
  }
  return q;
}

std::array<Pose6, 3> fingertip_poses(const HandModel& hand, const Pose6& palm,
                                     const JointConfig& q) {
  check_limits(hand, q);
  std::array<Pose6, 3> tips;
  for (int f = 0; f < 3; ++f)
    tips[f] =
        finger_frames(hand, palm, f, q.angles[2 * f], q.angles[2 * f + 1]).tip;
  return tips;
}

CloseResult close_fingers(const HandModel& hand, const Pose6& palm,
                          const ObjectModel& object) {
  CloseResult result;
  for (int f = 0; f < 3; ++f) {
    const FingerGeometry& fg = hand.fingers[f];
    const auto tip_center = [&](double s) {
      return finger_frames(hand, palm, f, s * fg.proximal_limit,
                           s * fg.distal_limit)
          .tip.position;
    };
    const auto gap = [&](double s) {
      return sdf(object, tip_center(s)) - hand.fingertip_radius;
    };

    double s_contact = -1.0;
    if (gap(0.0) <= kContactTol) {
      s_contact = 0.0;  // already touching or penetrating at the open pose
    } else {
      constexpr int kMarchSteps = 64;
      double prev = 0.0;
      for (int k = 1; k <= kMarchSteps; ++k) {
        const double s = static_cast<double>(k) / kMarchSteps;
        const double g = gap(s);
        if (g <= kContactTol) {
          if (g >= -kContactTol) {
            s_contact = s;
          } else {
            // Bisect the crossing between prev (gap > tol) and s (gap < -tol).
            double lo = prev, hi = s;
            for (int it = 0; it < kBisectIters; ++it) {
              const double mid = 0.5 * (lo + hi);
              const double gm = gap(mid);
              if (std::abs(gm) <= kContactTol) {
                hi = mid;
                break;
              }
              (gm > 0.0 ? lo : hi) = mid;
            }
            s_contact = hi;
          }
          break;
        }
        prev = s;
      }
    }

    const double s = s_contact >= 0.0 ? s_contact : 1.0;
    result.joints.angles[2 * f] = s * fg.proximal_limit;
    result.joints.angles[2 * f + 1] = s * fg.distal_limit;
    if (s_contact < 0.0) continue;

    const Eigen::Vector3d c = tip_center(s_contact);
    const double d = sdf(object, c);
    const Eigen::Vector3d g = sdf_gradient_safe(object, c);
    ContactPoint cp;
    cp.position = c - d * g;  // project the tip center onto the surface
    cp.normal = sdf_gradient_safe(object, cp.position);
    cp.link_id = 2 + 2 * f;
    cp.fingertip = true;
    result.contacts.push_back(cp);
  }
  return result;
}

int link_collision_count(const HandModel& hand, const Pose6& palm,
                         const JointConfig& q, const ObjectModel& object) {
  int count = 0;
  for (int link = 0; link < 7; ++link) {
    for (const auto& s : link_samples(hand, palm, q, link)) {
      if (sdf(object, s.point) - s.radius < -kPenetrationTol) {
        ++count;
        break;
      }
    }
  }
  return count;
}

bool below_plane(const HandModel& hand, const Pose6& palm,
                 const JointConfig& q, double height) {
  for (int link = 0; link < 7; ++link)
    for (const auto& s : link_samples(hand, palm, q, link))
      if (s.point.z() - s.radius < height) return true;
  return false;
}

Eigen::MatrixXd hand_jacobian(const HandModel& hand, const Pose6& palm,
                              const JointConfig& q,
                              const ContactSet& contacts) {
  if (contacts.empty()) throw EmptyContacts("hand_jacobian");
  Eigen::MatrixXd J =
      Eigen::MatrixXd::Zero(3 * static_cast<long>(contacts.size()), 6);
  for (int i = 0; i < static_cast<int>(contacts.size()); ++i) {
    const int link = contacts[i].link_id;
    if (link <= 0 || link > 6)
      throw Error("hand_jacobian: contact link is not a finger link");
    const int f = (link - 1) / 2;
    const FingerFrames fr =
        finger_frames(hand, palm, f, q.angles[2 * f], q.angles[2 * f + 1]);
    // Both joints rotate about the (shared) base-frame Y axis.
    const Eigen::Vector3d axis1 = fr.base.rotate(Eigen::Vector3d::UnitY());
    const Eigen::Vector3d axis2 = fr.joint1.rotate(Eigen::Vector3d::UnitY());
    const Eigen::Vector3d o1 = fr.joint1.position;
    const Eigen::Vector3d o2 = fr.joint2.position;
    const Eigen::Vector3d p = contacts[i].position;
    J.block<3, 1>(3 * i, 2 * f) = axis1.cross(p - o1);
    if (link == 2 + 2 * f)  // distal contacts see the second joint too
      J.block<3, 1>(3 * i, 2 * f + 1) = axis2.cross(p - o2);
  }
  return J;
}

}  // namespace graspbo
