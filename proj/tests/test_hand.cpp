#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "graspbo/hand.hpp"
#include "graspbo/rng.hpp"

using namespace graspbo;

namespace {

Pose6 random_pose(Rng& rng) {
  Eigen::Quaterniond q(rng.normal(), rng.normal(), rng.normal(), rng.normal());
  q.normalize();
  return {Eigen::Vector3d(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2),
                          rng.uniform(-0.2, 0.2)),
          q};
}

JointConfig random_config(const HandModel& hand, Rng& rng) {
  JointConfig q;
  for (int f = 0; f < 3; ++f) {
    q.angles[2 * f] = rng.uniform(0.0, hand.fingers[f].proximal_limit);
    q.angles[2 * f + 1] = rng.uniform(0.0, hand.fingers[f].distal_limit);
  }
  return q;
}

}  // namespace

TEST_CASE("open fingertips sit at the hand-computed reference positions") {
  const HandModel hand = HandModel::default_model();
  const auto tips =
      fingertip_poses(hand, Pose6::identity(), JointConfig::zeros());
  // base circle radius 0.045, links 0.05 + 0.04 along +Z.
  const double s = std::sqrt(3.0) / 2.0;
  const Eigen::Vector3d expected[3] = {
      {0.045, 0.0, 0.09},
      {-0.0225, 0.045 * s, 0.09},
      {-0.0225, -0.045 * s, 0.09},
  };
  for (int f = 0; f < 3; ++f)
    CHECK((tips[f].position - expected[f]).norm() < 1e-12);
}

TEST_CASE("fingertip poses are equivariant under palm motion") {
  const HandModel hand = HandModel::default_model();
  Rng rng(21);
  for (int i = 0; i < 30; ++i) {
    const JointConfig q = random_config(hand, rng);
    const auto base = fingertip_poses(hand, Pose6::identity(), q);

    const Eigen::Vector3d t(rng.normal(), rng.normal(), rng.normal());
    const auto shifted = fingertip_poses(hand, Pose6::translation(t), q);
    for (int f = 0; f < 3; ++f)
      CHECK((shifted[f].position - base[f].position - t).norm() < 1e-12);

    const Pose6 rot{Eigen::Vector3d::Zero(),
                    Eigen::Quaterniond(Eigen::AngleAxisd(
                        rng.uniform(-M_PI, M_PI), rng.unit_vector(3)))};
    const auto rotated = fingertip_poses(hand, rot, q);
    for (int f = 0; f < 3; ++f)
      CHECK((rotated[f].position - rot.apply(base[f].position)).norm() <
            1e-12);
  }
}

TEST_CASE("joint limits are enforced") {
  const HandModel hand = HandModel::default_model();
  JointConfig q;
  q.angles[1] = hand.fingers[0].distal_limit + 0.1;
  CHECK_THROWS_AS((void)fingertip_poses(hand, Pose6::identity(), q),
                  JointLimit);
}

TEST_CASE("roll by pi flips fingertip frames about the approach axis") {
  const HandModel hand = HandModel::default_model();
  const Pose6 a = align_to_center({0, 0, 0.2}, 0.0, {0, 0, 0});
  const Pose6 b = align_to_center({0, 0, 0.2}, M_PI, {0, 0, 0});
  CHECK((a.axis_z() - b.axis_z()).norm() < 1e-12);
  const auto ta = fingertip_poses(hand, a, JointConfig::zeros());
  const auto tb = fingertip_poses(hand, b, JointConfig::zeros());
  const Eigen::Vector3d origin = a.position;
  const Eigen::AngleAxisd flip(M_PI, a.axis_z());
  for (int f = 0; f < 3; ++f) {
    const Eigen::Vector3d mapped = origin + flip * (ta[f].position - origin);
    CHECK((mapped - tb[f].position).norm() < 1e-10);
  }
}

TEST_CASE("close_fingers on an unreachable object ends at the limits") {
  const HandModel hand = HandModel::default_model();
  const ObjectModel tiny =
      ObjectModel::from_primitives({ShapePrimitive::sphere(0.01)});
  const Pose6 palm = align_to_center({0, 0, 1.0}, 0.0, {0, 0, 0});
  const CloseResult res = close_fingers(hand, palm, tiny);
  CHECK(res.contacts.empty());
  for (int f = 0; f < 3; ++f) {
    CHECK(res.joints.angles[2 * f] ==
          doctest::Approx(hand.fingers[f].proximal_limit));
    CHECK(res.joints.angles[2 * f + 1] ==
          doctest::Approx(hand.fingers[f].distal_limit));
  }
}

TEST_CASE("close_fingers around a sphere yields three radial contacts") {
  const HandModel hand = HandModel::default_model();
  const ObjectModel sphere =
      ObjectModel::from_primitives({ShapePrimitive::sphere(0.025)});
  const Pose6 palm = align_to_center({0, 0, 0.085}, 0.0, {0, 0, 0});
  const CloseResult res = close_fingers(hand, palm, sphere);
  REQUIRE(res.contacts.size() == 3);
  for (const auto& c : res.contacts) {
    CHECK(c.fingertip);
    CHECK(std::abs(sdf(sphere, c.position)) <= kContactTol);
    const Eigen::Vector3d radial = c.position.normalized();
    CHECK((c.normal - radial).norm() < 1e-3);
  }
}

TEST_CASE("close_fingers reports immediate contact for a penetrating tip") {
  const HandModel hand = HandModel::default_model();
  // Sphere overlapping finger 0's open tip position.
  const ObjectModel obj = ObjectModel::from_primitives(
      {ShapePrimitive::sphere(0.02, Pose6::translation({0.050, 0.002, 0.09}))});
  const CloseResult res = close_fingers(hand, Pose6::identity(), obj);
  REQUIRE(!res.contacts.empty());
  bool finger0 = false;
  for (const auto& c : res.contacts)
    if (c.link_id == 2) finger0 = true;
  CHECK(finger0);
  CHECK(res.joints.angles[0] == doctest::Approx(0.0));
  CHECK(res.joints.angles[1] == doctest::Approx(0.0));
}

TEST_CASE("link collision counting") {
  const HandModel hand = HandModel::default_model();
  const ObjectModel unit_sphere =
      ObjectModel::from_primitives({ShapePrimitive::sphere(1.0)});
  const JointConfig open = JointConfig::zeros();

  CHECK(link_collision_count(hand, Pose6::translation({0, 0, 2.0}), open,
                             unit_sphere) == 0);

  // Palm at the object center: every link is inside.
  CHECK(link_collision_count(hand, Pose6::identity(), open, unit_sphere) == 7);

  // Exactly one fingertip overlapping: only that distal link counts.
  const ObjectModel tip_ball = ObjectModel::from_primitives(
      {ShapePrimitive::sphere(0.01, Pose6::translation({0.045, 0, 0.09}))});
  CHECK(link_collision_count(hand, Pose6::identity(), open, tip_ball) == 1);
}

TEST_CASE("separated hand never counts collisions") {
  const HandModel hand = HandModel::default_model();
  const ObjectModel obj = make_bottle();
  Rng rng(17);
  for (int i = 0; i < 50; ++i) {
    Pose6 palm = random_pose(rng);
    palm.position += Eigen::Vector3d(0, 0, 1.0);  // well above the object
    CHECK(link_collision_count(hand, palm, random_config(hand, rng), obj) ==
          0);
  }
}

TEST_CASE("deeper placement along the approach never reduces collisions") {
  const HandModel hand = HandModel::default_model();
  const ObjectModel sphere =
      ObjectModel::from_primitives({ShapePrimitive::sphere(0.5)});
  const JointConfig open = JointConfig::zeros();
  int prev = 0;
  for (double z = 0.7; z > -0.1; z -= 0.05) {
    const Pose6 palm = align_to_center({0, 0, z}, 0.0, {0, 0, -1});
    const int n = link_collision_count(hand, palm, open, sphere);
    CHECK(n >= prev);
    prev = n;
  }
}

TEST_CASE("hand jacobian matches central finite differences") {
  const HandModel hand = HandModel::default_model();
  Rng rng(33);
  const double delta = 1e-5;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Pose6 palm = random_pose(rng);
    JointConfig q = random_config(hand, rng);
    // Stay clear of the limits so perturbed configs remain valid.
    for (int j = 0; j < 6; ++j)
      q.angles[j] = std::clamp(q.angles[j], 2 * delta, 1.4 - 2 * delta);

    ContactSet contacts;
    const auto tips = fingertip_poses(hand, palm, q);
    for (int f = 0; f < 3; ++f) {
      ContactPoint c;
      c.position =
          tips[f].position +
          0.01 * Eigen::Vector3d(rng.normal(), rng.normal(), rng.normal());
      c.normal = Eigen::Vector3d::UnitZ();
      c.link_id = 2 + 2 * f;
      c.fingertip = true;
      contacts.push_back(c);
    }
    const Eigen::MatrixXd J = hand_jacobian(hand, palm, q, contacts);
    REQUIRE(J.rows() == 9);

    for (int i = 0; i < 3; ++i) {
      const int f = (contacts[i].link_id - 1) / 2;
      const Eigen::Vector3d p_local =
          tips[f].inverse().apply(contacts[i].position);
      for (int j = 0; j < 6; ++j) {
        JointConfig qp = q, qm = q;
        qp.angles[j] += delta;
        qm.angles[j] -= delta;
        const Eigen::Vector3d fp =
            fingertip_poses(hand, palm, qp)[f].apply(p_local);
        const Eigen::Vector3d fm =
            fingertip_poses(hand, palm, qm)[f].apply(p_local);
        const Eigen::Vector3d fd = (fp - fm) / (2 * delta);
        const Eigen::Vector3d col = J.block<3, 1>(3 * i, j);
        worst = std::max(worst, (col - fd).cwiseAbs().maxCoeff());
        if (2 * f != j && 2 * f + 1 != j) CHECK(col.norm() == 0.0);
      }
    }
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("hand jacobian rejects empty contact sets") {
  const HandModel hand = HandModel::default_model();
  CHECK_THROWS_AS(
      (void)hand_jacobian(hand, Pose6::identity(), JointConfig::zeros(), {}),
      EmptyContacts);
}

TEST_CASE("below_plane detects workbench crossings") {
  const HandModel hand = HandModel::default_model();
  const JointConfig open = JointConfig::zeros();
  CHECK(!below_plane(hand, Pose6::translation({0, 0, 0.2}), open, 0.0));
  CHECK(below_plane(hand, Pose6::translation({0, 0, 0.01}), open, 0.0));
  // Fingers pointing down cross the plane even when the palm stays above.
  const Pose6 down = align_to_center({0, 0, 0.05}, 0.0, {0, 0, -1});
  CHECK(below_plane(hand, down, open, 0.0));
}
