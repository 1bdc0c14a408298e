#include "graspbo/metrics.hpp"

#include <cmath>

namespace graspbo {

void MetricWeights::validate() const {
  if (w1 < 0 || w2 < 0 || w3 < 0 || w4 < 0)
    throw Error("metric weights must be non-negative");
  if (std::abs(w1 + w2 + w3 + w4 - 1.0) > 1e-9)
    throw Error("metric weights must sum to 1");
}

MetricWeights MetricWeights::single(int metric_index) {
  MetricWeights w{0, 0, 0, 0};
  switch (metric_index) {
    case 0: w.w1 = 1; break;
    case 1: w.w2 = 1; break;
    case 2: w.w3 = 1; break;
    case 3: w.w4 = 1; break;
    default: throw Error("metric index must be 0..3");
  }
  return w;
}

MetricWeights MetricWeights::from_array(const std::array<double, 4>& w) {
  MetricWeights out{w[0], w[1], w[2], w[3]};
  out.validate();
  return out;
}

void NormalizationState::observe(int metric, double value) {
  if (mode_ == Mode::Fixed) return;
  auto& [lo, hi] = bounds_[metric];
  if (!seen_[metric]) {
    lo = hi = value;
    seen_[metric] = true;
  } else {
    lo = std::min(lo, value);
    hi = std::max(hi, value);
  }
}

double NormalizationState::normalize(int metric, double value) const {
  const auto& [lo, hi] = bounds_[metric];
  if (!seen_[metric] || hi - lo < 1e-15) return 0.5;
  return std::clamp((value - lo) / (hi - lo), 0.0, 1.0);
}

void NormalizationState::freeze() {
  for (int m = 0; m < 4; ++m) {
    auto& [lo, hi] = bounds_[m];
    if (!seen_[m] || hi - lo < 1e-15) {
      lo = 0.0;
      hi = 1.0;
      seen_[m] = true;
    }
  }
  mode_ = Mode::Fixed;
}

void NormalizationState::set_bounds(int metric, double lo, double hi) {
  bounds_[metric] = {lo, hi};
  seen_[metric] = true;
}

namespace {

double sigma_ratio(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s[0] <= 0.0) return 0.0;
  return s[s.size() - 1] / s[0];
}

}  // namespace

double q_isotropy(const GraspMatrix& gm) { return sigma_ratio(gm.G); }

double q_uniformity(const Eigen::MatrixXd& jacobian) {
  return sigma_ratio(jacobian);
}

Eigen::MatrixXd wrench_matrix(const WrenchSet& w) {
  Eigen::MatrixXd m(w.primitives.size(), 6);
  for (size_t i = 0; i < w.primitives.size(); ++i)
    m.row(i) = w.primitives[i].transpose();
  return m;
}

EpsilonResult q_epsilon(const WrenchSet& w, const MetricsConfig& cfg,
                        Rng& rng) {
  const Eigen::MatrixXd m = wrench_matrix(w);
  if (!contains_origin(m)) return {0.0, true};
  if (static_cast<int>(w.primitives.size()) <= cfg.max_exact_points) {
    try {
      return {min_facet_distance(convex_hull(m)), true};
    } catch (const DegenerateHull&) {
      return {0.0, true};
    }
  }
  return {support_epsilon(m, cfg.epsilon_dirs, rng), false};
}

double q_volume(const WrenchSet& w, int n_samples, Rng& rng) {
  if (w.primitives.empty()) return 0.0;
  return mc_volume(wrench_matrix(w), n_samples, rng).value;
}

int force_closure(const WrenchSet& w) {
  if (w.primitives.empty()) return 0;
  return contains_origin(wrench_matrix(w)) ? 1 : 0;
}

double combine(const QualityVector& q, const MetricWeights& w) {
  w.validate();
  return w.w1 * q.q_iso + w.w2 * q.q_eps + w.w3 * q.q_v + w.w4 * q.q_uni;
}

}  // namespace graspbo
