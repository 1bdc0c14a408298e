#pragma once

// Test-only oracles, kept independent of the library implementations they
// cross-check.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "graspbo/geom.hpp"
#include "graspbo/rng.hpp"

namespace graspbo::testing {

/// Points sampled on the surface of one primitive (world frame).
inline std::vector<Eigen::Vector3d> sample_primitive_surface(
    const ShapePrimitive& s, int count, Rng& rng) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Eigen::Vector3d local;
    switch (s.kind) {
      case ShapeKind::Sphere:
        local = s.dimensions[0] * rng.unit_vector(3);
        break;
      case ShapeKind::Box: {
        // Pick a face, uniform on it.
        const int axis = static_cast<int>(rng.integer(3));
        const double side = rng.uniform() < 0.5 ? -1.0 : 1.0;
        for (int j = 0; j < 3; ++j)
          local[j] = rng.uniform(-s.dimensions[j], s.dimensions[j]);
        local[axis] = side * s.dimensions[axis];
        break;
      }
      case ShapeKind::Cylinder: {
        const double r = s.dimensions[0], hh = s.dimensions[1];
        const double u = rng.uniform();
        const double a = rng.uniform(0.0, 2.0 * M_PI);
        // Split by area between the side and the two caps.
        const double side_area = 2.0 * M_PI * r * 2.0 * hh;
        const double cap_area = M_PI * r * r;
        if (u < side_area / (side_area + 2.0 * cap_area)) {
          local = {r * std::cos(a), r * std::sin(a), rng.uniform(-hh, hh)};
        } else {
          const double rr = r * std::sqrt(rng.uniform());
          const double z = rng.uniform() < 0.5 ? -hh : hh;
          local = {rr * std::cos(a), rr * std::sin(a), z};
        }
        break;
      }
      case ShapeKind::Capsule: {
        const double r = s.dimensions[0], hl = s.dimensions[1];
        const double u = rng.uniform();
        const double side_area = 2.0 * M_PI * r * 2.0 * hl;
        const double sphere_area = 4.0 * M_PI * r * r;
        if (u < side_area / (side_area + sphere_area)) {
          const double a = rng.uniform(0.0, 2.0 * M_PI);
          local = {r * std::cos(a), r * std::sin(a), rng.uniform(-hl, hl)};
        } else {
          Eigen::Vector3d dir = rng.unit_vector(3);
          local = r * dir;
          local.z() += dir.z() >= 0.0 ? hl : -hl;
        }
        break;
      }
    }
    out.push_back(s.local_pose.apply(local));
  }
  return out;
}

/// Distance to the nearest sampled surface point of any primitive.
inline double sampled_surface_distance(const ObjectModel& object,
                                       const Eigen::Vector3d& p,
                                       const std::vector<Eigen::Vector3d>& pts) {
  (void)object;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& q : pts) best = std::min(best, (p - q).norm());
  return best;
}

}  // namespace graspbo::testing
