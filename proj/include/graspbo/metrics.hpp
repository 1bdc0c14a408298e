#pragma once

#include <Eigen/Dense>
#include <array>

#include "graspbo/contact.hpp"
#include "graspbo/hull.hpp"

namespace graspbo {

/// Raw and normalized grasp quality metrics plus the force-closure bit.
struct QualityVector {
  double q_iso_raw = 0.0, q_eps_raw = 0.0, q_v_raw = 0.0, q_uni_raw = 0.0;
  double q_iso = 0.0, q_eps = 0.0, q_v = 0.0, q_uni = 0.0;
  int q_f = 0;
};

/// Weights of the combined metric; must sum to 1.
struct MetricWeights {
  double w1 = 0.0, w2 = 1.0, w3 = 0.0, w4 = 0.0;

  void validate() const;
  static MetricWeights single(int metric_index);  // w_i = 1
  static MetricWeights from_array(const std::array<double, 4>& w);
};

/// Per-metric running or frozen [min, max] bounds used to map raw metric
/// values into [0, 1].
class NormalizationState {
 public:
  enum class Mode { Running, Fixed };

  explicit NormalizationState(Mode mode = Mode::Running) : mode_(mode) {}

  /// Record a raw value (metric 0..3). In Fixed mode this is a no-op.
  void observe(int metric, double value);

  /// (v - min) / (max - min), clamped to [0, 1]; a degenerate range maps
  /// everything to 0.5.
  double normalize(int metric, double value) const;

  /// Freeze the currently observed bounds and switch to Fixed mode.
  /// Metrics never observed (or constant) fall back to [0, 1].
  void freeze();

  Mode mode() const { return mode_; }
  double min_bound(int metric) const { return bounds_[metric].first; }
  double max_bound(int metric) const { return bounds_[metric].second; }
  void set_bounds(int metric, double lo, double hi);

 private:
  Mode mode_;
  std::array<std::pair<double, double>, 4> bounds_{};  // (min, max)
  std::array<bool, 4> seen_{};
};

/// sigma_min / sigma_max of the grasp matrix; 0 for an empty or zero matrix.
double q_isotropy(const GraspMatrix& gm);

/// Reciprocal condition number sigma_min / sigma_max of the hand Jacobian,
/// so larger is better and the range is [0, 1].
double q_uniformity(const Eigen::MatrixXd& jacobian);

struct MetricsConfig {
  int max_exact_points = 64;   // facet enumeration above this count is skipped
  int epsilon_dirs = 4096;     // support-sampling directions (approx path)
  int volume_samples = 4096;   // MC volume samples per evaluation
};

struct EpsilonResult {
  double value = 0.0;
  bool exact_path = true;
};

/// Largest-minimum resisted wrench: 0 without force closure, otherwise the
/// exact facet distance or the sampled support bound (flagged).
EpsilonResult q_epsilon(const WrenchSet& w, const MetricsConfig& cfg, Rng& rng);

/// GWS volume estimate; 0 for degenerate wrench sets.
double q_volume(const WrenchSet& w, int n_samples, Rng& rng);

/// 1 iff the wrench primitives strictly surround the origin (kClosureTol).
int force_closure(const WrenchSet& w);

/// Q_m = w1 q_iso + w2 q_eps + w3 q_v + w4 q_uni over normalized metrics.
double combine(const QualityVector& q, const MetricWeights& w);

/// Wrench primitives as a (count x 6) matrix for the hull machinery.
Eigen::MatrixXd wrench_matrix(const WrenchSet& w);

}  // namespace graspbo
