#include "graspbo/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace graspbo {

namespace {

constexpr double kGradientEps = 1e-9;

double sign3(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

double sdf_sphere(const Eigen::Vector3d& p, double r) { return p.norm() - r; }

double sdf_box(const Eigen::Vector3d& p, const Eigen::Vector3d& h) {
  const Eigen::Vector3d q = p.cwiseAbs() - h;
  const Eigen::Vector3d outside = q.cwiseMax(0.0);
  const double inside = std::min(q.maxCoeff(), 0.0);
  return outside.norm() + inside;
}

double sdf_cylinder(const Eigen::Vector3d& p, double r, double hh) {
  const double dxy = std::hypot(p.x(), p.y()) - r;
  const double dz = std::abs(p.z()) - hh;
  const double ox = std::max(dxy, 0.0);
  const double oz = std::max(dz, 0.0);
  return std::min(std::max(dxy, dz), 0.0) + std::hypot(ox, oz);
}

double sdf_capsule(const Eigen::Vector3d& p, double r, double hl) {
  const double a = std::clamp(p.z(), -hl, hl);
  return Eigen::Vector3d(p.x(), p.y(), p.z() - a).norm() - r;
}

Eigen::Vector3d grad_sphere(const Eigen::Vector3d& p) {
  const double n = p.norm();
  if (n < kGradientEps) throw DegenerateGradient("sphere center");
  return p / n;
}

Eigen::Vector3d grad_box(const Eigen::Vector3d& p, const Eigen::Vector3d& h) {
  const Eigen::Vector3d q = p.cwiseAbs() - h;
  if ((q.array() > 0.0).any()) {
    Eigen::Vector3d g = q.cwiseMax(0.0);
    for (int i = 0; i < 3; ++i) g[i] *= sign3(p[i]);
    const double n = g.norm();
    if (n < kGradientEps) throw DegenerateGradient("box face degenerate");
    return g / n;
  }
  // Interior: nearest face along the largest q component. sign(0) = 0 keeps
  // the exact center (and axis-symmetric interior points) degenerate.
  int axis = 0;
  q.maxCoeff(&axis);
  Eigen::Vector3d g = Eigen::Vector3d::Zero();
  g[axis] = sign3(p[axis]);
  if (g.norm() < kGradientEps) throw DegenerateGradient("box interior axis");
  return g;
}

Eigen::Vector3d grad_cylinder(const Eigen::Vector3d& p, double r, double hh) {
  const double rho = std::hypot(p.x(), p.y());
  const double dxy = rho - r;
  const double dz = std::abs(p.z()) - hh;
  const Eigen::Vector3d radial =
      rho < kGradientEps ? Eigen::Vector3d::Zero()
                         : Eigen::Vector3d(p.x() / rho, p.y() / rho, 0.0);
  const Eigen::Vector3d axial(0.0, 0.0, sign3(p.z()));
  Eigen::Vector3d g;
  if (dxy > 0.0 && dz > 0.0) {
    g = dxy * radial + dz * axial;
  } else if (dxy > dz) {
    g = radial;
  } else {
    g = axial;
  }
  const double n = g.norm();
  if (n < kGradientEps) throw DegenerateGradient("cylinder axis");
  return g / n;
}

Eigen::Vector3d grad_capsule(const Eigen::Vector3d& p, double hl) {
  const double a = std::clamp(p.z(), -hl, hl);
  const Eigen::Vector3d v(p.x(), p.y(), p.z() - a);
  const double n = v.norm();
  if (n < kGradientEps) throw DegenerateGradient("capsule axis");
  return v / n;
}

double local_sdf(const ShapePrimitive& s, const Eigen::Vector3d& q) {
  switch (s.kind) {
    case ShapeKind::Sphere:
      return sdf_sphere(q, s.dimensions[0]);
    case ShapeKind::Box:
      return sdf_box(q, s.dimensions);
    case ShapeKind::Cylinder:
      return sdf_cylinder(q, s.dimensions[0], s.dimensions[1]);
    case ShapeKind::Capsule:
      return sdf_capsule(q, s.dimensions[0], s.dimensions[1]);
  }
  return std::numeric_limits<double>::infinity();
}

Eigen::Vector3d local_grad(const ShapePrimitive& s, const Eigen::Vector3d& q) {
  switch (s.kind) {
    case ShapeKind::Sphere:
      return grad_sphere(q);
    case ShapeKind::Box:
      return grad_box(q, s.dimensions);
    case ShapeKind::Cylinder:
      return grad_cylinder(q, s.dimensions[0], s.dimensions[1]);
    case ShapeKind::Capsule:
      return grad_capsule(q, s.dimensions[1]);
  }
  throw DegenerateGradient("unknown primitive");
}

Aabb primitive_aabb(const ShapePrimitive& s) {
  const Eigen::Matrix3d R = s.local_pose.orientation.toRotationMatrix();
  const Eigen::Vector3d c = s.local_pose.position;
  Eigen::Vector3d extent;
  switch (s.kind) {
    case ShapeKind::Sphere:
      extent = Eigen::Vector3d::Constant(s.dimensions[0]);
      break;
    case ShapeKind::Box:
      extent = R.cwiseAbs() * s.dimensions;
      break;
    case ShapeKind::Cylinder: {
      const Eigen::Vector3d a = R.col(2);
      for (int i = 0; i < 3; ++i) {
        const double perp = std::sqrt(std::max(0.0, 1.0 - a[i] * a[i]));
        extent[i] = s.dimensions[1] * std::abs(a[i]) + s.dimensions[0] * perp;
      }
      break;
    }
    case ShapeKind::Capsule: {
      const Eigen::Vector3d a = R.col(2);
      extent = (s.dimensions[1] * a.cwiseAbs()).array() + s.dimensions[0];
      break;
    }
  }
  return {c - extent, c + extent};
}

}  // namespace

ShapePrimitive ShapePrimitive::sphere(double radius, const Pose6& pose) {
  return {ShapeKind::Sphere, {radius, 0.0, 0.0}, pose};
}

ShapePrimitive ShapePrimitive::box(const Eigen::Vector3d& half_extents,
                                   const Pose6& pose) {
  return {ShapeKind::Box, half_extents, pose};
}

ShapePrimitive ShapePrimitive::cylinder(double radius, double half_height,
                                        const Pose6& pose) {
  return {ShapeKind::Cylinder, {radius, half_height, 0.0}, pose};
}

ShapePrimitive ShapePrimitive::capsule(double radius, double half_length,
                                       const Pose6& pose) {
  return {ShapeKind::Capsule, {radius, half_length, 0.0}, pose};
}

ObjectModel ObjectModel::from_primitives(std::vector<ShapePrimitive> prims) {
  ObjectModel obj;
  obj.primitives = std::move(prims);
  Eigen::Vector3d lo = Eigen::Vector3d::Constant(
      std::numeric_limits<double>::infinity());
  Eigen::Vector3d hi = -lo;
  for (const auto& s : obj.primitives) {
    const Aabb b = primitive_aabb(s);
    lo = lo.cwiseMin(b.min);
    hi = hi.cwiseMax(b.max);
  }
  obj.aabb = {lo, hi};
  obj.center = 0.5 * (lo + hi);
  return obj;
}

double ObjectModel::torque_scale() const {
  double best = 0.0;
  for (int i = 0; i < 8; ++i) {
    const Eigen::Vector3d corner(i & 1 ? aabb.max.x() : aabb.min.x(),
                                 i & 2 ? aabb.max.y() : aabb.min.y(),
                                 i & 4 ? aabb.max.z() : aabb.min.z());
    best = std::max(best, (corner - center).norm());
  }
  return best;
}

double primitive_sdf(const ShapePrimitive& s, const Eigen::Vector3d& p) {
  return local_sdf(s, s.local_pose.inverse().apply(p));
}

double sdf(const ObjectModel& object, const Eigen::Vector3d& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : object.primitives)
    best = std::min(best, primitive_sdf(s, p));
  return best;
}

Eigen::Vector3d sdf_gradient(const ObjectModel& object,
                             const Eigen::Vector3d& p) {
  if (object.primitives.empty()) throw DegenerateGradient("empty object");
  double best = std::numeric_limits<double>::infinity();
  const ShapePrimitive* nearest = nullptr;
  for (const auto& s : object.primitives) {
    const double d = primitive_sdf(s, p);
    if (d < best) {
      best = d;
      nearest = &s;
    }
  }
  const Eigen::Vector3d local = nearest->local_pose.inverse().apply(p);
  return nearest->local_pose.rotate(local_grad(*nearest, local));
}

Eigen::Vector3d sdf_gradient_fd(const ObjectModel& object,
                                const Eigen::Vector3d& p, double h) {
  Eigen::Vector3d g;
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d e = Eigen::Vector3d::Zero();
    e[i] = h;
    g[i] = (sdf(object, p + e) - sdf(object, p - e)) / (2.0 * h);
  }
  const double n = g.norm();
  if (n < kGradientEps) throw DegenerateGradient("flat finite differences");
  return g / n;
}

Eigen::Vector3d sdf_gradient_safe(const ObjectModel& object,
                                  const Eigen::Vector3d& p) {
  try {
    return sdf_gradient(object, p);
  } catch (const DegenerateGradient&) {
    return sdf_gradient_fd(object, p);
  }
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> tangent_basis(
    const Eigen::Vector3d& z) {
  // Reference axis least aligned with z; ties resolve to the lower index.
  const Eigen::Vector3d a = z.cwiseAbs();
  Eigen::Vector3d ref = Eigen::Vector3d::UnitX();
  if (a.y() < a.x() && a.y() <= a.z()) ref = Eigen::Vector3d::UnitY();
  if (a.z() < a.x() && a.z() < a.y()) ref = Eigen::Vector3d::UnitZ();
  const Eigen::Vector3d t1 = (ref - ref.dot(z) * z).normalized();
  const Eigen::Vector3d t2 = z.cross(t1);
  return {t1, t2};
}

Pose6 align_to_center(const Eigen::Vector3d& position, double roll,
                      const Eigen::Vector3d& center) {
  const Eigen::Vector3d dir = center - position;
  const double dist = dir.norm();
  if (dist <= 1e-6) throw DegeneratePose("palm position at object center");
  const Eigen::Vector3d z = dir / dist;
  auto [t1, t2] = tangent_basis(z);
  const double c = std::cos(roll), s = std::sin(roll);
  const Eigen::Vector3d x = c * t1 + s * t2;
  const Eigen::Vector3d y = z.cross(x);
  Eigen::Matrix3d R;
  R.col(0) = x;
  R.col(1) = y;
  R.col(2) = z;
  return {position, Eigen::Quaterniond(R).normalized()};
}

ObjectModel make_bottle() {
  // Squarish body with a capsule neck, ~19 cm tall, base on z = 0.
  std::vector<ShapePrimitive> prims;
  prims.push_back(ShapePrimitive::box(
      {0.038, 0.024, 0.070}, Pose6::translation({0.0, 0.0, 0.070})));
  prims.push_back(ShapePrimitive::capsule(
      0.016, 0.022, Pose6::translation({0.0, 0.0, 0.155})));
  return ObjectModel::from_primitives(std::move(prims));
}

ObjectModel make_mug() {
  // Cylindrical cup with a handle ring of 8 capsules on the +x side.
  std::vector<ShapePrimitive> prims;
  prims.push_back(ShapePrimitive::cylinder(
      0.040, 0.048, Pose6::translation({0.0, 0.0, 0.048})));
  const double ring_r = 0.028;
  const double cap_r = 0.007;
  const Eigen::Vector3d ring_center(0.040 + 0.014, 0.0, 0.048);
  for (int i = 0; i < 8; ++i) {
    const double a0 = 2.0 * M_PI * i / 8.0;
    const double a1 = 2.0 * M_PI * (i + 1) / 8.0;
    // Segment endpoints on the ring, in the xz-plane.
    const Eigen::Vector3d p0 =
        ring_center + ring_r * Eigen::Vector3d(std::cos(a0), 0, std::sin(a0));
    const Eigen::Vector3d p1 =
        ring_center + ring_r * Eigen::Vector3d(std::cos(a1), 0, std::sin(a1));
    const Eigen::Vector3d mid = 0.5 * (p0 + p1);
    const Eigen::Vector3d axis = (p1 - p0).normalized();
    const double hl = 0.5 * (p1 - p0).norm();
    const Eigen::Quaterniond q =
        Eigen::Quaterniond::FromTwoVectors(Eigen::Vector3d::UnitZ(), axis);
    prims.push_back(ShapePrimitive::capsule(cap_r, hl, {mid, q}));
  }
  return ObjectModel::from_primitives(std::move(prims));
}

ObjectModel make_drill() {
  // Body box, grip box, and a chuck cylinder along +x.
  std::vector<ShapePrimitive> prims;
  prims.push_back(ShapePrimitive::box(
      {0.055, 0.026, 0.030}, Pose6::translation({0.0, 0.0, 0.120})));
  prims.push_back(ShapePrimitive::box(
      {0.020, 0.024, 0.060}, Pose6::translation({-0.025, 0.0, 0.060})));
  const Eigen::Quaterniond q =
      Eigen::Quaterniond::FromTwoVectors(Eigen::Vector3d::UnitZ(),
                                         Eigen::Vector3d::UnitX());
  prims.push_back(ShapePrimitive::cylinder(0.016, 0.025, {{0.080, 0.0, 0.120}, q}));
  return ObjectModel::from_primitives(std::move(prims));
}

ObjectModel make_object(const std::string& name) {
  if (name == "bottle") return make_bottle();
  if (name == "mug") return make_mug();
  if (name == "drill") return make_drill();
  throw ConfigError("unknown object: " + name);
}

}  // namespace graspbo
