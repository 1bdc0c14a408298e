#pragma once

#include <algorithm>
#include <cmath>

namespace graspbo {

/// Convergence-shaping parameters: lambda is the decay rate of the
/// approximation/contact rewards, alpha scales their contribution against
/// the normalized grasp metrics.
struct HeuristicParams {
  double lambda = 0.1;
  double alpha = 0.1;
};

enum class FeasibilityReason { Ok, Unreachable, WorkbenchCollision };

struct FeasibilityResult {
  int q_c = 1;
  FeasibilityReason reason = FeasibilityReason::Ok;

  static FeasibilityResult ok() { return {1, FeasibilityReason::Ok}; }
  static FeasibilityResult fail(FeasibilityReason r) { return {0, r}; }
};

/// AR(n_j) = exp(-lambda n_j) for n_j > 0, else 0: graded reward for poses
/// colliding with the object, higher the shallower the collision.
inline double approximation_reward(int n_j, double lambda) {
  return n_j > 0 ? std::exp(-lambda * n_j) : 0.0;
}

/// CR(n_c) = 1 - exp(-lambda n_c): graded reward for fingertip contacts.
inline double contact_reward(int n_c, double lambda) {
  return 1.0 - std::exp(-lambda * n_c);
}

/// Collision-penalty baseline for the ablation arm: CP(n_j) =
/// -(1 - exp(-lambda n_j)) for n_j > 0, else 0.
inline double collision_penalty_baseline(int n_j, double lambda) {
  return n_j > 0 ? -(1.0 - std::exp(-lambda * n_j)) : 0.0;
}

/// y_simple = Q_c Q_f Q_m.
inline double evaluate_simple(int q_c, int q_f, double q_m) {
  return q_c * q_f * q_m;
}

/// y_AR = Q_c Q_f (Q_m + alpha AR).
inline double evaluate_ar(int q_c, int q_f, double q_m, double ar,
                          double alpha) {
  return q_c * q_f * (q_m + alpha * ar);
}

/// y_gr = Q_c (Q_m + alpha (AR + CR)); Q_m must already be 0 without force
/// closure so closure grasps always dominate.
inline double evaluate_gr(int q_c, double q_m, double ar, double cr,
                          double alpha) {
  return q_c * (q_m + alpha * (ar + cr));
}

/// Collision-penalty arm: y = Q_c (Q_f Q_m + alpha CP). Unlike the reward
/// arms this can go negative on colliding poses; that signal is the point
/// of the baseline.
inline double evaluate_cp(int q_c, int q_f, double q_m, double cp,
                          double alpha) {
  return q_c * (q_f * q_m + alpha * cp);
}

}  // namespace graspbo
