#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "graspbo/hull.hpp"
#include "graspbo/rng.hpp"

using namespace graspbo;

namespace {

Eigen::MatrixXd square_corners() {
  Eigen::MatrixXd p(4, 2);
  p << 1, 1, 1, -1, -1, 1, -1, -1;
  return p;
}

Eigen::MatrixXd cross_polytope(int d) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2 * d, d);
  for (int i = 0; i < d; ++i) {
    p(2 * i, i) = 1.0;
    p(2 * i + 1, i) = -1.0;
  }
  return p;
}

Eigen::MatrixXd cube_corners() {
  Eigen::MatrixXd p(8, 3);
  for (int i = 0; i < 8; ++i)
    p.row(i) << (i & 1 ? 1 : -1), (i & 2 ? 1 : -1), (i & 4 ? 1 : -1);
  return p;
}

/// Every input point must lie inside or on every facet hyperplane.
void check_membership(const Eigen::MatrixXd& points,
                      const std::vector<Facet>& facets, double tol = 1e-9) {
  for (const auto& f : facets) {
    CHECK(f.normal.norm() == doctest::Approx(1.0).epsilon(1e-9));
    for (int i = 0; i < points.rows(); ++i)
      CHECK(f.normal.dot(points.row(i)) <= f.offset + tol);
  }
}

Eigen::MatrixXd random_orthogonal(int d, Rng& rng) {
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.normal();
  return Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
}

}  // namespace

TEST_CASE("square hull: 4 facets, all at distance 1") {
  const auto facets = convex_hull(square_corners());
  CHECK(facets.size() == 4);
  for (const auto& f : facets)
    CHECK(f.offset == doctest::Approx(1.0).epsilon(1e-12));
  check_membership(square_corners(), facets);
  CHECK(min_facet_distance(facets) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("regular simplex hull has 4 facets") {
  Eigen::MatrixXd p(4, 3);
  p << 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1;
  const auto facets = convex_hull(p);
  CHECK(facets.size() == 4);
  check_membership(p, facets);
}

TEST_CASE("6D cross-polytope: 64 simplicial facets at 1/sqrt(6)") {
  const Eigen::MatrixXd p = cross_polytope(6);
  const auto facets = convex_hull(p);
  CHECK(facets.size() == 64);
  const double expected = 1.0 / std::sqrt(6.0);
  for (const auto& f : facets) {
    CHECK(f.offset == doctest::Approx(expected).epsilon(1e-9));
    CHECK(f.vertices.size() == 6);
    // Normals are sign patterns (+-1,...,+-1)/sqrt(6).
    for (int j = 0; j < 6; ++j)
      CHECK(std::abs(f.normal[j]) == doctest::Approx(expected).epsilon(1e-9));
  }
  check_membership(p, facets);
  CHECK(min_facet_distance(facets) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("affinely dependent points are rejected") {
  Eigen::MatrixXd p(4, 3);  // all on the z=0 plane
  p << 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 0;
  CHECK_THROWS_AS((void)convex_hull(p), DegenerateHull);

  Eigen::MatrixXd two(2, 6);
  two.setZero();
  two(0, 0) = 1;
  two(1, 0) = -1;
  CHECK_THROWS_AS((void)convex_hull(two), DegenerateHull);
}

TEST_CASE("contains_origin basics") {
  CHECK(contains_origin(cross_polytope(6)));
  CHECK(contains_origin(square_corners()));

  // All points in the open half-space x1 > 0.1.
  Rng rng(3);
  Eigen::MatrixXd p(20, 3);
  for (int i = 0; i < 20; ++i) {
    p(i, 0) = 0.1 + rng.uniform(0.01, 1.0);
    p(i, 1) = rng.normal();
    p(i, 2) = rng.normal();
  }
  CHECK(!contains_origin(p));

  // Two antipodal points in 6D: degenerate, no interior.
  Eigen::MatrixXd two(2, 6);
  two.setZero();
  two(0, 2) = 1;
  two(1, 2) = -1;
  CHECK(!contains_origin(two));
}

TEST_CASE("min_facet_distance: diamond, homogeneity, origin-outside error") {
  const Eigen::MatrixXd diamond = cross_polytope(2);
  const auto facets = convex_hull(diamond);
  CHECK(facets.size() == 4);
  CHECK(min_facet_distance(facets) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

  for (double c : {0.25, 3.0, 17.5}) {
    const auto scaled = convex_hull(Eigen::MatrixXd(c * diamond));
    CHECK(min_facet_distance(scaled) ==
          doctest::Approx(c / std::sqrt(2.0)).epsilon(1e-12));
  }

  Eigen::MatrixXd shifted = square_corners();
  shifted.col(0).array() += 5.0;  // origin now outside
  CHECK_THROWS_AS((void)min_facet_distance(convex_hull(shifted)),
                  OriginOutside);
}

TEST_CASE("contains_origin agrees with the facet path on random sets") {
  Rng rng(101);
  int inside_cases = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int d = (trial % 3 == 0) ? 2 : (trial % 3 == 1 ? 3 : 6);
    const int n = d + 2 + static_cast<int>(rng.integer(2 * d + 10));
    Eigen::MatrixXd p(n, d);
    // Half the trials get an offset that usually pushes the origin out.
    const double shift = (trial % 2 == 0) ? 0.0 : rng.uniform(0.3, 1.2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j)
        p(i, j) = rng.uniform(-1.0, 1.0) + (j == 0 ? shift : 0.0);

    bool hull_inside;
    try {
      const auto facets = convex_hull(p);
      hull_inside = true;
      for (const auto& f : facets)
        if (f.offset <= 0.0) hull_inside = false;
      check_membership(p, facets);
    } catch (const DegenerateHull&) {
      hull_inside = false;
    }
    CHECK(contains_origin(p) == hull_inside);
    inside_cases += hull_inside;
  }
  // Make sure the test exercises both outcomes.
  CHECK(inside_cases > 50);
  CHECK(inside_cases < 450);
}

TEST_CASE("support_epsilon upper-bounds and approximates the exact value") {
  Rng rng(7);

  // Facet normals of the square are axis directions, which the candidate
  // set always contains, so the sampled path is exact here.
  Rng r1(1);
  CHECK(support_epsilon(square_corners(), 64, r1) ==
        doctest::Approx(1.0).epsilon(1e-12));

  Rng r2(2);
  const double eps6 = support_epsilon(cross_polytope(6), 4096, r2);
  const double exact6 = 1.0 / std::sqrt(6.0);
  CHECK(eps6 >= exact6 - 1e-12);
  CHECK(eps6 <= 1.02 * exact6);

  // Random interior hulls in 3D and 6D: sampled path within 2% above exact.
  for (int trial = 0; trial < 25; ++trial) {
    const int d = trial % 2 == 0 ? 3 : 6;
    const int n = 2 * d + static_cast<int>(rng.integer(30));
    Eigen::MatrixXd p(n, d);
    for (int i = 0; i < n; ++i) p.row(i) = rng.unit_vector(d).transpose();
    if (!contains_origin(p)) continue;
    const double exact = min_facet_distance(convex_hull(p));
    Rng r3(trial);
    const double approx = support_epsilon(p, 4096, r3);
    CHECK(approx >= exact - 1e-12);
    CHECK(approx <= 1.02 * exact);
  }
}

TEST_CASE("support_epsilon requires the origin inside") {
  Eigen::MatrixXd shifted = square_corners();
  shifted.col(0).array() += 5.0;
  Rng rng(1);
  CHECK_THROWS_AS((void)support_epsilon(shifted, 64, rng), OriginOutside);
}

TEST_CASE("mc_volume matches analytic volumes") {
  Rng r1(11);
  const auto cube = mc_volume(cube_corners(), 100000, r1);
  CHECK(std::abs(cube.value - 8.0) <= std::max(3.0 * cube.std_error, 1e-12));

  Eigen::MatrixXd simplex(4, 3);
  simplex << 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1;
  Rng r2(12);
  const auto vol_s = mc_volume(simplex, 100000, r2);
  CHECK(std::abs(vol_s.value - 1.0 / 6.0) <= 3.0 * vol_s.std_error);
  CHECK(vol_s.std_error < 0.01);

  Rng r3(13);
  const auto vol_x = mc_volume(cross_polytope(6), 100000, r3);
  const double analytic = 64.0 / 720.0;
  CHECK(std::abs(vol_x.value - analytic) <= 3.0 * vol_x.std_error);

  // Degenerate input reports (0, 0).
  Eigen::MatrixXd flat(4, 3);
  flat << 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 0;
  Rng r4(14);
  const auto vol_f = mc_volume(flat, 1000, r4);
  CHECK(vol_f.value == 0.0);
  CHECK(vol_f.std_error == 0.0);
}

TEST_CASE("rotations leave facet distances and volumes invariant") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = trial % 2 == 0 ? 3 : 6;
    const int n = 2 * d + 6;
    Eigen::MatrixXd p(n, d);
    for (int i = 0; i < n; ++i) p.row(i) = rng.unit_vector(d).transpose();
    if (!contains_origin(p)) continue;
    const Eigen::MatrixXd q = p * random_orthogonal(d, rng).transpose();

    const double e1 = min_facet_distance(convex_hull(p));
    const double e2 = min_facet_distance(convex_hull(q));
    CHECK(e1 == doctest::Approx(e2).epsilon(1e-9));

    Rng ra(trial), rb(trial + 1000);
    const auto va = mc_volume(p, 40000, ra);
    const auto vb = mc_volume(q, 40000, rb);
    CHECK(std::abs(va.value - vb.value) <=
          3.0 * (va.std_error + vb.std_error));
  }
}
