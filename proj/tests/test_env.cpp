#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "graspbo/env.hpp"

using namespace graspbo;

namespace {

Scene sphere_scene(double radius = 0.03, double center_z = 0.035) {
  return Scene::standard(ObjectModel::from_primitives(
      {ShapePrimitive::sphere(radius, Pose6::translation({0, 0, center_z}))}));
}

HandModel stiff_hand() {
  HandModel hand = HandModel::default_model();
  for (auto& f : hand.fingers) {
    f.proximal_limit = 0.05;
    f.distal_limit = 0.05;
  }
  return hand;
}

/// Palm-rim-plus-proximal collision pose with fingers that cannot reach
/// anything: exactly two colliding links and no contacts.
struct PillarScenario {
  Scene scene;
  HandModel hand;
  GraspPose pose{0.0, 0.0, 0.20, 0.0};

  PillarScenario()
      : scene(Scene::standard(ObjectModel::from_primitives(
            {ShapePrimitive::box({0.035, 0.035, 0.02},
                                 Pose6::translation({0.0, 0.0, 0.02})),
             ShapePrimitive::box({0.02, 0.022, 0.02},
                                 Pose6::translation({0.05, 0.0, 0.195}))}))),
        hand(stiff_hand()) {}
};

}  // namespace

TEST_CASE("pose bounds grow the AABB by the finger size and clamp z") {
  HandModel hand = HandModel::default_model();
  hand.fingers[0].proximal_length = 0.05;
  hand.fingers[0].distal_length = 0.05;
  hand.fingertip_radius = 0.02;  // finger_size = 0.12
  REQUIRE(hand.finger_size() == doctest::Approx(0.12));

  const ObjectModel cube =
      ObjectModel::from_primitives({ShapePrimitive::box({0.5, 0.5, 0.5})});
  const Bounds b = pose_bounds(cube, hand, -10.0, 0.02);
  CHECK(b.lo[0] == doctest::Approx(-0.62).epsilon(1e-12));
  CHECK(b.hi[0] == doctest::Approx(0.62).epsilon(1e-12));
  CHECK(b.lo[1] == doctest::Approx(-0.62).epsilon(1e-12));
  CHECK(b.hi[2] == doctest::Approx(0.62).epsilon(1e-12));

  // Table at z = 0: lower z bound is the palm clearance.
  const Bounds bt = pose_bounds(cube, hand, 0.0, 0.02);
  CHECK(bt.lo[2] == doctest::Approx(0.02));

  // Roll bounds are object-independent.
  const Bounds bs = pose_bounds(make_mug(), hand, 0.0, 0.02);
  CHECK(b.lo[3] == -M_PI);
  CHECK(b.hi[3] == M_PI);
  CHECK(bs.lo[3] == -M_PI);
  CHECK(bs.hi[3] == M_PI);
}

TEST_CASE("capability map lookups and the radial profile") {
  const Eigen::Vector3d center(0.1, 0.0, 0.2);
  CapabilityMap map = CapabilityMap::radial(center, 0.3, 0.025);

  CHECK(map.index_at(center) > 0.99);
  CHECK(map.index_at(center + Eigen::Vector3d(10, 0, 0)) == 0.0);
  // Outside the workspace sphere but inside the grid corner: index 0.
  CHECK(map.index_at(center + Eigen::Vector3d(0.29, 0.29, 0.29)) == 0.0);

  const Pose6 at_center{center, Eigen::Quaterniond::Identity()};
  CHECK(reachable(map, at_center));
  const Pose6 outside{center + Eigen::Vector3d(0, 0, 5.0),
                      Eigen::Quaterniond::Identity()};
  CHECK(!reachable(map, outside));

  map.threshold = 0.0;
  const Pose6 in_grid{center + Eigen::Vector3d(0.28, 0.28, 0.28),
                      Eigen::Quaterniond::Identity()};
  CHECK(reachable(map, in_grid));  // threshold 0 admits every in-grid voxel
}

TEST_CASE("capability map CSV round-trip") {
  const CapabilityMap map =
      CapabilityMap::radial({0.05, -0.1, 0.2}, 0.2, 0.05, 0.15);
  const std::string path = "/tmp/graspbo_test_map.csv";
  map.save_csv(path);
  const CapabilityMap loaded = CapabilityMap::load_csv(path);
  CHECK(loaded.nx == map.nx);
  CHECK(loaded.ny == map.ny);
  CHECK(loaded.nz == map.nz);
  CHECK(loaded.resolution == map.resolution);
  CHECK(loaded.threshold == map.threshold);
  CHECK((loaded.origin - map.origin).norm() == 0.0);
  REQUIRE(loaded.values.size() == map.values.size());
  for (size_t i = 0; i < map.values.size(); ++i)
    CHECK(loaded.values[i] == map.values[i]);
  std::remove(path.c_str());
}

TEST_CASE("collision classification") {
  const Scene scene = sphere_scene();
  const HandModel hand = HandModel::default_model();

  // Palm below the bench.
  const Pose6 below = Pose6::translation({0, 0, -0.05});
  const CollisionClass wb = classify_collision(scene, hand, below);
  CHECK(wb.feasibility.q_c == 0);
  CHECK(wb.feasibility.reason == FeasibilityReason::WorkbenchCollision);

  // Palm overlapping the object: still valid, collisions only counted.
  const Scene bottle = Scene::standard(make_bottle());
  const Pose6 inside =
      align_to_center({0, 0, 0.205}, 0.0, bottle.object.center);
  const CollisionClass ov = classify_collision(bottle, hand, inside);
  CHECK(ov.feasibility.q_c == 1);
  CHECK(ov.n_j >= 1);

  // Free pose above everything.
  const Pose6 free_pose =
      align_to_center({0, 0, 0.25}, 0.0, scene.object.center);
  const CollisionClass fr = classify_collision(scene, hand, free_pose);
  CHECK(fr.feasibility.q_c == 1);
  CHECK(fr.n_j == 0);
}

TEST_CASE("pregrasp approach feasibility") {
  const Scene scene = sphere_scene();
  const HandModel hand = HandModel::default_model();

  // Top-down above the object: the whole retreat column is clear.
  const Pose6 top = align_to_center({0, 0, 0.15}, 0.0, scene.object.center);
  CHECK(pregrasp_approach(scene, hand, top, 0.10));

  // Lateral pose at bench height: the retreat pose dips fingers below the
  // bench.
  const Pose6 lateral =
      align_to_center({0.12, 0, 0.03}, 0.0, scene.object.center);
  CHECK(!pregrasp_approach(scene, hand, lateral, 0.10));
}

TEST_CASE("execute_grasp: unreachable poses short-circuit to zero") {
  const Scene scene = sphere_scene();
  const HandModel hand = HandModel::default_model();
  TrialConfig cfg;
  NormalizationState norm;
  Rng rng(1);
  // Far outside the capability grid.
  const EvalRecord r =
      execute_grasp(scene, hand, {0.0, 0.0, 5.0, 0.0}, cfg, norm, rng);
  CHECK(r.q_c == 0);
  CHECK(r.reason == TrialReason::Unreachable);
  CHECK(r.y == 0.0);
  CHECK(r.n_c == 0);
  CHECK(r.contacts.empty());
  CHECK(r.quality.q_f == 0);
  CHECK(r.quality.q_iso_raw == 0.0);
  CHECK(r.quality.q_eps_raw == 0.0);
}

TEST_CASE("execute_grasp: colliding-but-valid pose scores alpha AR exactly") {
  const PillarScenario sc;
  TrialConfig cfg;
  cfg.arm = EvalArm::Gr;
  NormalizationState norm;
  Rng rng(1);
  const EvalRecord r =
      execute_grasp(sc.scene, sc.hand, sc.pose, cfg, norm, rng);
  REQUIRE(r.q_c == 1);
  REQUIRE(r.n_j == 2);
  REQUIRE(r.n_c == 0);
  CHECK(r.quality.q_f == 0);
  CHECK(r.y == doctest::Approx(0.1 * std::exp(-0.2)).epsilon(1e-12));
}

TEST_CASE("execute_grasp: three-contact closure grasp on a sphere") {
  const Scene scene = sphere_scene();
  const HandModel hand = HandModel::default_model();
  TrialConfig cfg;
  cfg.arm = EvalArm::Gr;
  NormalizationState norm;
  Rng rng(7);
  const EvalRecord r =
      execute_grasp(scene, hand, {0.0, 0.0, 0.12, 0.0}, cfg, norm, rng);
  REQUIRE(r.q_c == 1);
  CHECK(r.n_j == 0);
  CHECK(r.n_c == 3);
  CHECK(r.contacts.size() == 3);
  CHECK(r.quality.q_f == 1);
  CHECK(r.quality.q_eps_raw > 0.0);
  CHECK(r.y >= cfg.heuristics.alpha * contact_reward(3, cfg.heuristics.lambda));
}

TEST_CASE("execute_grasp recomputes from logged components (noise-free)") {
  const Scene scene = sphere_scene();
  const HandModel hand = HandModel::default_model();
  Rng pose_rng(11);
  const Bounds b = pose_bounds(scene.object, hand);
  for (int arm_i = 0; arm_i < 4; ++arm_i) {
    TrialConfig cfg;
    cfg.arm = static_cast<EvalArm>(arm_i);
    NormalizationState norm;
    for (int t = 0; t < 40; ++t) {
      Eigen::Vector4d u;
      for (int j = 0; j < 4; ++j) u[j] = pose_rng.uniform();
      Rng trial_rng(t);
      const EvalRecord r =
          execute_grasp(scene, hand, b.denormalize(u), cfg, norm, trial_rng);

      if (r.q_c == 0) {
        CHECK(r.y == 0.0);
        CHECK(r.q_m == 0.0);
        continue;
      }
      const double a = cfg.heuristics.alpha;
      double expected = 0.0;
      switch (cfg.arm) {
        case EvalArm::Simple:
          expected = r.q_c * r.quality.q_f * r.q_m;
          break;
        case EvalArm::Cp:
          expected = r.q_c * (r.quality.q_f * r.q_m + a * r.cp);
          break;
        case EvalArm::Ar:
          expected = r.q_c * r.quality.q_f * (r.q_m + a * r.ar);
          break;
        case EvalArm::Gr:
          expected = r.q_c * (r.q_m + a * (r.ar + r.cr));
          break;
      }
      CHECK(std::abs(r.y - expected) <= 1e-12);
      CHECK(r.n_c <= 3);
      CHECK(r.ar == approximation_reward(r.n_j, cfg.heuristics.lambda));
      CHECK(r.cr == contact_reward(r.n_c, cfg.heuristics.lambda));
      if (!r.quality.q_f) CHECK(r.q_m == 0.0);
    }
  }
}

TEST_CASE("execute_grasp is bit-reproducible for a fixed seed") {
  const Scene scene = sphere_scene();
  const HandModel hand = HandModel::default_model();
  TrialConfig cfg;
  cfg.noise = {1e-3, 0.01, 0.01};
  for (const GraspPose pose :
       {GraspPose{0.0, 0.0, 0.12, 0.3}, GraspPose{0.05, 0.02, 0.10, -1.0}}) {
    NormalizationState n1, n2;
    Rng r1(42), r2(42);
    const EvalRecord a = execute_grasp(scene, hand, pose, cfg, n1, r1);
    const EvalRecord b = execute_grasp(scene, hand, pose, cfg, n2, r2);
    CHECK(a.y == b.y);
    CHECK(a.n_j == b.n_j);
    CHECK(a.n_c == b.n_c);
    CHECK(a.quality.q_eps_raw == b.quality.q_eps_raw);
    CHECK(a.quality.q_v_raw == b.quality.q_v_raw);
    REQUIRE(a.contacts.size() == b.contacts.size());
    for (size_t i = 0; i < a.contacts.size(); ++i)
      CHECK((a.contacts[i].position - b.contacts[i].position).norm() == 0.0);
  }
}

TEST_CASE("success proxy: solid sphere grasp passes, degenerate pairs fail") {
  const Scene scene = sphere_scene();
  const HandModel hand = HandModel::default_model();
  TrialConfig cfg;
  NormalizationState norm;
  Rng rng(7);
  const EvalRecord grasp =
      execute_grasp(scene, hand, {0.0, 0.0, 0.12, 0.0}, cfg, norm, rng);
  REQUIRE(grasp.quality.q_f == 1);

  // sigma = 0: success is exactly (closure and q_eps >= min_epsilon).
  TrialConfig noiseless = cfg;
  ProxyConfig proxy;
  Rng pr(1);
  const bool expect =
      grasp.quality.q_f == 1 && grasp.quality.q_eps_raw >= proxy.min_epsilon;
  CHECK(success_proxy(grasp, scene, noiseless, proxy, pr) == expect);
  CHECK(expect);  // this grasp really is robust

  // With sensor noise the sphere grasp stays a success.
  TrialConfig noisy = cfg;
  noisy.noise.sigma_pos = 1e-3;
  Rng pr2(2);
  CHECK(success_proxy(grasp, scene, noisy, proxy, pr2));

  // A two-contact pinch: each contact's cone edges span an affine plane,
  // so 2 contacts span at most 5 of 6 wrench dimensions and closure never
  // holds under resampling. The proxy must report failure.
  EvalRecord pinch;
  ContactPoint c1, c2;
  c1.position = {0, 0, 0.065};
  c1.normal = {0, 0, 1};
  c1.link_id = 2;
  c1.fingertip = true;
  c2.position = {0, 0, 0.005};
  c2.normal = {0, 0, -1};
  c2.link_id = 4;
  c2.fingertip = true;
  pinch.contacts = {c1, c2};
  Rng pr3(3);
  CHECK(!success_proxy(pinch, scene, noisy, proxy, pr3));

  // No contacts at all: error.
  EvalRecord empty;
  Rng pr4(4);
  CHECK_THROWS_AS((void)success_proxy(empty, scene, noisy, proxy, pr4),
                  NoContacts);
}

TEST_CASE("scene standard map admits near-object poses, rejects corners") {
  const Scene scene = Scene::standard(make_bottle());
  const HandModel hand = HandModel::default_model();
  const Bounds b = pose_bounds(scene.object, hand);
  const Pose6 above =
      align_to_center({0.0, 0.0, 0.25}, 0.0, scene.object.center);
  CHECK(reachable(scene.capability, above));

  // A pose far beyond the bounds is off-grid.
  const Pose6 far{{1.0, 1.0, 1.0}, Eigen::Quaterniond::Identity()};
  CHECK(!reachable(scene.capability, far));
  (void)b;
}
