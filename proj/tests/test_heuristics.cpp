#include <doctest.h>

#include <cmath>

#include "graspbo/heuristics.hpp"

using namespace graspbo;

TEST_CASE("approximation reward closed form") {
  CHECK(approximation_reward(0, 0.1) == 0.0);
  CHECK(approximation_reward(1, 0.1) ==
        doctest::Approx(0.90483741803595957).epsilon(1e-14));
  CHECK(approximation_reward(7, 0.1) ==
        doctest::Approx(0.49658530379140951).epsilon(1e-14));
  // Strictly decreasing for n >= 1, discontinuous at 0.
  for (int n = 1; n < 100; ++n)
    CHECK(approximation_reward(n + 1, 0.1) < approximation_reward(n, 0.1));
  CHECK(approximation_reward(60, 0.1) > approximation_reward(0, 0.1));
}

TEST_CASE("contact reward closed form") {
  CHECK(contact_reward(0, 0.1) == 0.0);
  CHECK(contact_reward(3, 0.1) ==
        doctest::Approx(0.25918177931828213).epsilon(1e-14));
  for (int n = 0; n <= 100; ++n)
    CHECK(contact_reward(n + 1, 0.1) > contact_reward(n, 0.1));
}

TEST_CASE("collision penalty baseline") {
  CHECK(collision_penalty_baseline(0, 0.1) == 0.0);
  CHECK(collision_penalty_baseline(1, 0.1) ==
        doctest::Approx(-0.095162581964040427).epsilon(1e-14));
  CHECK(collision_penalty_baseline(100000, 0.1) ==
        doctest::Approx(-1.0).epsilon(1e-12));
  for (int n = 1; n < 50; ++n)
    CHECK(collision_penalty_baseline(n + 1, 0.1) <
          collision_penalty_baseline(n, 0.1));
}

TEST_CASE("evaluation function gates and arithmetic") {
  CHECK(evaluate_simple(0, 1, 0.9) == 0.0);
  CHECK(evaluate_simple(1, 0, 0.9) == 0.0);
  CHECK(evaluate_simple(1, 1, 0.7) == doctest::Approx(0.7).epsilon(1e-15));

  CHECK(evaluate_ar(1, 1, 0.5, 0.9, 0.1) ==
        doctest::Approx(0.59).epsilon(1e-15));
  CHECK(evaluate_ar(1, 1, 0.5, 0.0, 0.1) == evaluate_simple(1, 1, 0.5));
  CHECK(evaluate_ar(0, 1, 0.5, 0.9, 0.1) == 0.0);

  CHECK(evaluate_gr(1, 0.0, 0.0, 0.0, 0.1) == 0.0);
  CHECK(evaluate_gr(1, 0.0, std::exp(-0.1), 0.0, 0.1) ==
        doctest::Approx(0.090483741803595957).epsilon(1e-14));
  CHECK(evaluate_gr(0, 0.8, 0.9, 0.9, 0.1) == 0.0);
  CHECK(evaluate_gr(1, 0.0, std::exp(-0.2), 0.0, 0.1) ==
        doctest::Approx(0.081873075307798182).epsilon(1e-14));
}

TEST_CASE("all evaluation functions match direct formula recomputation") {
  for (double lambda : {0.05, 0.1, 0.5}) {
    for (int nj = 0; nj <= 20; ++nj) {
      for (int nc = 0; nc <= 20; ++nc) {
        const double ar = nj > 0 ? std::exp(-lambda * nj) : 0.0;
        const double cr = 1.0 - std::exp(-lambda * nc);
        const double cp = nj > 0 ? -(1.0 - std::exp(-lambda * nj)) : 0.0;
        CHECK(approximation_reward(nj, lambda) == ar);
        CHECK(contact_reward(nc, lambda) == cr);
        CHECK(collision_penalty_baseline(nj, lambda) == cp);
        for (int qc : {0, 1}) {
          for (int qf : {0, 1}) {
            const double qm = qf ? 0.6 : 0.0;
            const double alpha = 0.1;
            CHECK(std::abs(evaluate_simple(qc, qf, qm) - qc * qf * qm) <=
                  1e-12);
            CHECK(std::abs(evaluate_ar(qc, qf, qm, ar, alpha) -
                           qc * qf * (qm + alpha * ar)) <= 1e-12);
            CHECK(std::abs(evaluate_gr(qc, qm, ar, cr, alpha) -
                           qc * (qm + alpha * (ar + cr))) <= 1e-12);
            CHECK(std::abs(evaluate_cp(qc, qf, qm, cp, alpha) -
                           qc * (qf * qm + alpha * cp)) <= 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("reward-arm outcomes stay within [0, 1+2a]; closure dominates") {
  const double alpha = 0.1;
  for (int nj = 0; nj <= 30; ++nj) {
    for (int nc = 0; nc <= 3; ++nc) {
      const double ar = approximation_reward(nj, 0.1);
      const double cr = contact_reward(nc, 0.1);
      for (double qm : {0.0, 0.2, 1.0}) {
        const double y = evaluate_gr(1, qm, ar, cr, alpha);
        CHECK(y >= 0.0);
        CHECK(y <= 1.0 + 2 * alpha);
        // Any closure grasp with normalized Q_m >= 0.2 beats any
        // non-closure pose (heuristic contribution < 2 alpha = 0.2).
        if (qm >= 0.2) CHECK(y > evaluate_gr(1, 0.0, ar, cr, alpha));
      }
    }
  }
}
