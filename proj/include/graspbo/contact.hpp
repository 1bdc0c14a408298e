#pragma once

#include <Eigen/Dense>
#include <vector>

#include "graspbo/errors.hpp"
#include "graspbo/rng.hpp"

namespace graspbo {

using Wrench = Eigen::Matrix<double, 6, 1>;

struct ContactPoint {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();  // on the object surface
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();   // outward from object
  int link_id = -1;
  bool fingertip = false;
};

using ContactSet = std::vector<ContactPoint>;

/// Coulomb point-contact-with-friction model, linearized to `cone_edges`
/// extreme force directions.
struct FrictionModel {
  double mu = 0.5;
  int cone_edges = 8;
};

/// Grasp wrench space primitives: unit contact forces along cone edges with
/// torques about the object center, scaled by `torque_scale` so force and
/// torque components are commensurate.
struct WrenchSet {
  std::vector<Wrench> primitives;
  double torque_scale = 1.0;
};

/// Linear map from stacked contact forces (3k) to the net object wrench (6).
struct GraspMatrix {
  Eigen::Matrix<double, 6, Eigen::Dynamic> G;
  double torque_scale = 1.0;
};

/// Extreme directions of the linearized friction cone at a contact:
/// d_i = normalize(-n + mu (cos phi_i t1 + sin phi_i t2)), phi_i = 2 pi i / E,
/// with (t1, t2, -n) right-handed. mu = 0 collapses to the inward normal.
std::vector<Eigen::Vector3d> friction_cone_edges(const ContactPoint& c,
                                                 const FrictionModel& f);

/// One wrench primitive per contact per cone edge:
/// w = [d; ((p - center) x d) / torque_scale]. Throws EmptyContacts.
WrenchSet wrench_primitives(const ContactSet& contacts, const FrictionModel& f,
                            const Eigen::Vector3d& center, double torque_scale);

/// Throws EmptyContacts.
GraspMatrix grasp_matrix(const ContactSet& contacts,
                         const Eigen::Vector3d& center, double torque_scale);

struct ContactNoise {
  double sigma_pos = 0.0;  // m, isotropic Gaussian on positions
  double sigma_ang = 0.0;  // rad, Gaussian angle about a random axis
};

/// Perturbed copy; sigma = 0 returns the input unchanged.
ContactSet perturb_contacts(const ContactSet& contacts,
                            const ContactNoise& noise, Rng& rng);

}  // namespace graspbo
