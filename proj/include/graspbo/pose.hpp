#pragma once

#include <Eigen/Dense>

#include "graspbo/errors.hpp"

namespace graspbo {

/// The 4D optimization variable: palm position plus roll about the
/// center-aligned approach axis.
struct GraspPose {
  double x = 0.0, y = 0.0, z = 0.0;  // m
  double roll = 0.0;                 // rad, in [-pi, pi)

  Eigen::Vector4d vec() const { return {x, y, z, roll}; }

  static GraspPose from_vec(const Eigen::Vector4d& v) {
    return {v[0], v[1], v[2], v[3]};
  }

  Eigen::Vector3d position() const { return {x, y, z}; }
};

/// Axis-aligned box bounds of the 4D pose space.
struct Bounds {
  Eigen::Vector4d lo = Eigen::Vector4d::Zero();
  Eigen::Vector4d hi = Eigen::Vector4d::Ones();

  void validate() const {
    for (int i = 0; i < 4; ++i)
      if (!(lo[i] < hi[i])) throw Error("bounds: lo must be < hi");
  }

  bool contains(const GraspPose& p, double tol = 1e-9) const {
    const Eigen::Vector4d v = p.vec();
    return (v.array() >= lo.array() - tol).all() &&
           (v.array() <= hi.array() + tol).all();
  }

  /// Map into the unit box (the GP works on normalized inputs).
  Eigen::Vector4d normalize(const GraspPose& p) const {
    return (p.vec() - lo).cwiseQuotient(hi - lo);
  }

  GraspPose denormalize(const Eigen::Vector4d& u) const {
    return GraspPose::from_vec(lo + u.cwiseProduct(hi - lo));
  }

  GraspPose clamp(const GraspPose& p) const {
    return GraspPose::from_vec(p.vec().cwiseMax(lo).cwiseMin(hi));
  }
};

}  // namespace graspbo
