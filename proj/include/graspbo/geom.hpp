#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <string>
#include <vector>

#include "graspbo/errors.hpp"

namespace graspbo {

/// Rigid-body transform: rotation then translation, SI units throughout.
struct Pose6 {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();

  static Pose6 identity() { return {}; }

  static Pose6 translation(const Eigen::Vector3d& t) {
    return {t, Eigen::Quaterniond::Identity()};
  }

  Eigen::Vector3d apply(const Eigen::Vector3d& p) const {
    return orientation * p + position;
  }

  Eigen::Vector3d rotate(const Eigen::Vector3d& v) const {
    return orientation * v;
  }

  /// this ∘ other: apply `other` first, then this.
  Pose6 compose(const Pose6& other) const {
    return {orientation * other.position + position,
            (orientation * other.orientation).normalized()};
  }

  Pose6 inverse() const {
    const Eigen::Quaterniond qi = orientation.conjugate();
    return {qi * -position, qi};
  }

  /// Local +Z expressed in the parent frame (the palm approach axis).
  Eigen::Vector3d axis_z() const {
    return orientation * Eigen::Vector3d::UnitZ();
  }
};

enum class ShapeKind { Sphere, Box, Cylinder, Capsule };

/// Convex primitive in its own local frame.
///   sphere:   dimensions = (radius, 0, 0)
///   box:      dimensions = half-extents (hx, hy, hz)
///   cylinder: dimensions = (radius, half_height, 0), axis = local Z
///   capsule:  dimensions = (radius, half_length, 0), segment on local Z
struct ShapePrimitive {
  ShapeKind kind = ShapeKind::Sphere;
  Eigen::Vector3d dimensions = Eigen::Vector3d::Zero();
  Pose6 local_pose;

  static ShapePrimitive sphere(double radius, const Pose6& pose = {});
  static ShapePrimitive box(const Eigen::Vector3d& half_extents,
                            const Pose6& pose = {});
  static ShapePrimitive cylinder(double radius, double half_height,
                                 const Pose6& pose = {});
  static ShapePrimitive capsule(double radius, double half_length,
                                const Pose6& pose = {});
};

struct Aabb {
  Eigen::Vector3d min = Eigen::Vector3d::Zero();
  Eigen::Vector3d max = Eigen::Vector3d::Zero();

  bool contains(const Eigen::Vector3d& p, double tol = 0.0) const {
    return (p.array() >= min.array() - tol).all() &&
           (p.array() <= max.array() + tol).all();
  }
};

/// Rigid object as a union of primitives. `center` is the alignment and
/// torque reference; defaults to the AABB centroid.
struct ObjectModel {
  std::vector<ShapePrimitive> primitives;
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Aabb aabb;

  static ObjectModel from_primitives(std::vector<ShapePrimitive> prims);

  /// Largest distance from `center` to an AABB corner; the default
  /// torque normalization length.
  double torque_scale() const;
};

/// Signed distance of `p` to a single primitive (world frame).
double primitive_sdf(const ShapePrimitive& s, const Eigen::Vector3d& p);

/// Union SDF: min over primitives. Negative inside, zero on the surface.
double sdf(const ObjectModel& object, const Eigen::Vector3d& p);

/// Outward unit gradient of the union SDF at p, analytic per primitive.
/// Throws DegenerateGradient where the closest primitive's gradient
/// vanishes (e.g. exact box center); callers fall back to
/// sdf_gradient_fd.
Eigen::Vector3d sdf_gradient(const ObjectModel& object,
                             const Eigen::Vector3d& p);

/// Central-difference fallback gradient.
Eigen::Vector3d sdf_gradient_fd(const ObjectModel& object,
                                const Eigen::Vector3d& p, double h = 1e-6);

/// Gradient with automatic finite-difference fallback on degeneracy.
Eigen::Vector3d sdf_gradient_safe(const ObjectModel& object,
                                  const Eigen::Vector3d& p);

/// Palm pose whose local +Z points from `position` toward `center`, with
/// `roll` applied about that axis. Deterministic for fixed inputs.
/// Throws DegeneratePose when |position - center| <= 1e-6.
Pose6 align_to_center(const Eigen::Vector3d& position, double roll,
                      const Eigen::Vector3d& center);

/// Deterministic right-handed tangent basis for a unit vector z:
/// returns (t1, t2) with t1 x t2 = z.
std::pair<Eigen::Vector3d, Eigen::Vector3d> tangent_basis(
    const Eigen::Vector3d& z);

// Object library: primitive compositions standing in for household items,
// varied in symmetry and size.
ObjectModel make_bottle();
ObjectModel make_mug();
ObjectModel make_drill();

/// Lookup by name ("bottle", "mug", "drill"); throws ConfigError otherwise.
ObjectModel make_object(const std::string& name);

}  // namespace graspbo
