#pragma once

#include <Eigen/Dense>
#include <vector>

#include "graspbo/errors.hpp"
#include "graspbo/rng.hpp"

namespace graspbo {

/// Strict-interiority margin for force-closure decisions.
inline constexpr double kClosureTol = 1e-6;

/// Supporting hyperplane of the hull: normal is unit and outward, every hull
/// point p satisfies normal . p <= offset (+1e-9). `vertices` index the d
/// input points spanning the facet.
struct Facet {
  Eigen::VectorXd normal;
  double offset = 0.0;
  std::vector<int> vertices;
};

/// Exact facet enumeration for small d-dimensional point sets (d in 2..6),
/// incremental insertion with deterministic lexicographic tie-breaking.
/// Facets are simplicial. Throws DegenerateHull when the points are
/// affinely dependent.
std::vector<Facet> convex_hull(const Eigen::MatrixXd& points);

/// True iff the origin is strictly inside conv(points) by more than
/// kClosureTol. Implemented independently of convex_hull (Frank-Wolfe
/// distance-to-origin minimization plus support-function minimization over
/// the sphere) so the two paths can cross-validate.
bool contains_origin(const Eigen::MatrixXd& points);

/// Distance from the origin to the nearest facet hyperplane
/// (= min offset for unit normals). Throws OriginOutside unless every
/// offset is positive.
double min_facet_distance(const std::vector<Facet>& facets);

/// Upper bound on the epsilon quality via sampled support directions with
/// local refinement; exact when the sampled set contains the minimizing
/// facet normal. Throws OriginOutside.
double support_epsilon(const Eigen::MatrixXd& points, int n_dirs, Rng& rng);

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Rejection-sampled hull volume inside the point bounding box; std_error
/// from binomial variance. Degenerate inputs give (0, 0).
VolumeEstimate mc_volume(const Eigen::MatrixXd& points, int n_samples,
                         Rng& rng);

/// Support function h(u) = max_i points.row(i) . u.
double support_value(const Eigen::MatrixXd& points, const Eigen::VectorXd& u);

}  // namespace graspbo
