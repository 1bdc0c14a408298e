#include "graspbo/contact.hpp"

#include <cmath>

#include "graspbo/geom.hpp"

namespace graspbo {

std::vector<Eigen::Vector3d> friction_cone_edges(const ContactPoint& c,
                                                 const FrictionModel& f) {
  const Eigen::Vector3d n = c.normal.normalized();
  const Eigen::Vector3d b = -n;  // force pushes into the object
  // (t1, t2, b) right-handed: tangent_basis guarantees t1 x t2 = b.
  auto [t1, t2] = tangent_basis(b);
  std::vector<Eigen::Vector3d> edges;
  edges.reserve(f.cone_edges);
  for (int i = 0; i < f.cone_edges; ++i) {
    if (f.mu == 0.0) {
      edges.push_back(b);
      continue;
    }
    const double phi = 2.0 * M_PI * i / f.cone_edges;
    const Eigen::Vector3d d =
        b + f.mu * (std::cos(phi) * t1 + std::sin(phi) * t2);
    edges.push_back(d.normalized());
  }
  return edges;
}

WrenchSet wrench_primitives(const ContactSet& contacts, const FrictionModel& f,
                            const Eigen::Vector3d& center,
                            double torque_scale) {
  if (contacts.empty()) throw EmptyContacts("wrench_primitives");
  WrenchSet ws;
  ws.torque_scale = torque_scale;
  ws.primitives.reserve(contacts.size() * f.cone_edges);
  for (const auto& c : contacts) {
    const Eigen::Vector3d lever = c.position - center;
    for (const auto& d : friction_cone_edges(c, f)) {
      Wrench w;
      w.head<3>() = d;
      w.tail<3>() = lever.cross(d) / torque_scale;
      ws.primitives.push_back(w);
    }
  }
  return ws;
}

GraspMatrix grasp_matrix(const ContactSet& contacts,
                         const Eigen::Vector3d& center, double torque_scale) {
  if (contacts.empty()) throw EmptyContacts("grasp_matrix");
  GraspMatrix gm;
  gm.torque_scale = torque_scale;
  gm.G.resize(6, 3 * static_cast<int>(contacts.size()));
  for (int i = 0; i < static_cast<int>(contacts.size()); ++i) {
    const Eigen::Vector3d r = (contacts[i].position - center) / torque_scale;
    Eigen::Matrix3d rx;
    rx << 0, -r.z(), r.y(), r.z(), 0, -r.x(), -r.y(), r.x(), 0;
    gm.G.block<3, 3>(0, 3 * i) = Eigen::Matrix3d::Identity();
    gm.G.block<3, 3>(3, 3 * i) = rx;
  }
  return gm;
}

ContactSet perturb_contacts(const ContactSet& contacts,
                            const ContactNoise& noise, Rng& rng) {
  if (noise.sigma_pos == 0.0 && noise.sigma_ang == 0.0) return contacts;
  ContactSet out = contacts;
  for (auto& c : out) {
    for (int i = 0; i < 3; ++i)
      c.position[i] += rng.normal(0.0, noise.sigma_pos);
    const Eigen::Vector3d axis = rng.unit_vector(3);
    const double angle = rng.normal(0.0, noise.sigma_ang);
    c.normal = (Eigen::AngleAxisd(angle, axis) * c.normal).normalized();
  }
  return out;
}

}  // namespace graspbo
