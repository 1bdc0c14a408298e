#include "graspbo/bo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace graspbo {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

bool lex_less_pose(const GraspPose& a, const GraspPose& b) {
  const Eigen::Vector4d va = a.vec(), vb = b.vec();
  for (int i = 0; i < 4; ++i) {
    if (va[i] < vb[i]) return true;
    if (va[i] > vb[i]) return false;
  }
  return false;
}

bool is_duplicate(const GraspPose& p, const SurrogateModel& model,
                  const Bounds& bounds, double tol) {
  const Eigen::Vector4d v = p.vec();
  for (int i = 0; i < model.size(); ++i) {
    const Eigen::Vector4d q =
        bounds.denormalize(model.inputs.row(i).transpose()).vec();
    if ((v - q).cwiseAbs().maxCoeff() <= tol) return true;
  }
  return false;
}

/// Nelder-Mead on the unit box (values clamped inside the objective),
/// maximizing f. Fixed iteration budget, deterministic.
Eigen::Vector4d nelder_mead_max(
    const std::function<double(const Eigen::Vector4d&)>& f,
    const Eigen::Vector4d& start, int iters) {
  constexpr int n = 4;
  struct Vertex {
    Eigen::Vector4d x;
    double value;
  };
  auto clamp01 = [](const Eigen::Vector4d& u) {
    return u.cwiseMax(0.0).cwiseMin(1.0).eval();
  };
  std::vector<Vertex> simplex;
  simplex.push_back({clamp01(start), 0.0});
  for (int j = 0; j < n; ++j) {
    Eigen::Vector4d v = start;
    v[j] += v[j] > 0.5 ? -0.05 : 0.05;
    simplex.push_back({clamp01(v), 0.0});
  }
  for (auto& s : simplex) s.value = f(s.x);

  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) {
                       return a.value > b.value;  // best first
                     });
  };
  order();

  for (int it = 0; it < iters; ++it) {
    Eigen::Vector4d centroid = Eigen::Vector4d::Zero();
    for (int j = 0; j < n; ++j) centroid += simplex[j].x;
    centroid /= n;
    Vertex& worst = simplex[n];

    const Eigen::Vector4d xr = clamp01(centroid + (centroid - worst.x));
    const double fr = f(xr);
    if (fr > simplex[0].value) {
      const Eigen::Vector4d xe = clamp01(centroid + 2.0 * (centroid - worst.x));
      const double fe = f(xe);
      worst = fe > fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr > simplex[n - 1].value) {
      worst = {xr, fr};
    } else {
      const Eigen::Vector4d xc = clamp01(centroid - 0.5 * (centroid - worst.x));
      const double fc = f(xc);
      if (fc > worst.value) {
        worst = {xc, fc};
      } else {
        for (int j = 1; j <= n; ++j) {
          simplex[j].x = clamp01(simplex[0].x + 0.5 * (simplex[j].x - simplex[0].x));
          simplex[j].value = f(simplex[j].x);
        }
      }
    }
    order();
    if ((simplex[0].x - simplex[n].x).cwiseAbs().maxCoeff() < 1e-10) break;
  }
  return simplex[0].x;
}

}  // namespace

const EvalRecord* History::best_record() const {
  const EvalRecord* best = nullptr;
  for (const auto& e : entries)
    if (!best || e.record.y > best->y) best = &e.record;
  return best;
}

double expected_improvement(const PredictiveMixture& mix, double rho) {
  double ei = 0.0;
  for (const auto& [mu, var] : mix.components) {
    if (var <= 1e-24) {
      ei += std::max(0.0, mu - rho);
      continue;
    }
    const double sigma = std::sqrt(var);
    const double z = (mu - rho) / sigma;
    ei += (mu - rho) * normal_cdf(z) + sigma * normal_pdf(z);
  }
  return std::max(0.0, ei);
}

std::vector<GraspPose> initial_design(const Bounds& bounds, int n0, Rng& rng) {
  if (n0 < 1) throw Error("initial_design: n0 must be >= 1");
  bounds.validate();
  // One stratum permutation per dimension.
  std::array<std::vector<int>, 4> perm;
  for (int j = 0; j < 4; ++j) {
    perm[j].resize(n0);
    std::iota(perm[j].begin(), perm[j].end(), 0);
    for (int i = n0 - 1; i > 0; --i)
      std::swap(perm[j][i], perm[j][rng.integer(i + 1)]);
  }
  std::vector<GraspPose> out;
  out.reserve(n0);
  for (int i = 0; i < n0; ++i) {
    Eigen::Vector4d u;
    for (int j = 0; j < 4; ++j)
      u[j] = (perm[j][i] + rng.uniform()) / n0;
    out.push_back(bounds.denormalize(u));
  }
  return out;
}

GraspPose maximize_acquisition(const SurrogateModel& model, double rho,
                               const Bounds& bounds,
                               const AcquisitionConfig& acq, Rng& rng) {
  bounds.validate();
  const auto ei_at = [&](const Eigen::Vector4d& u) {
    return expected_improvement(predict(model, u), rho);
  };

  struct Candidate {
    Eigen::Vector4d u;
    double ei;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(acq.candidates + acq.refine_top);
  for (int i = 0; i < acq.candidates; ++i) {
    Eigen::Vector4d u;
    for (int j = 0; j < 4; ++j) u[j] = rng.uniform();
    candidates.push_back({u, ei_at(u)});
  }

  auto better = [&](const Candidate& a, const Candidate& b) {
    if (a.ei != b.ei) return a.ei > b.ei;
    return lex_less_pose(bounds.denormalize(a.u), bounds.denormalize(b.u));
  };
  std::stable_sort(candidates.begin(), candidates.end(), better);

  const int refine = std::min<int>(acq.refine_top, candidates.size());
  for (int k = 0; k < refine; ++k) {
    const Eigen::Vector4d u =
        nelder_mead_max(ei_at, candidates[k].u, acq.nm_iters);
    candidates.push_back({u, ei_at(u)});
  }
  std::stable_sort(candidates.begin(), candidates.end(), better);

  for (const auto& c : candidates) {
    const GraspPose pose = bounds.clamp(bounds.denormalize(c.u));
    if (!is_duplicate(pose, model, bounds, acq.duplicate_tol)) return pose;
  }
  // Every candidate duplicated an evaluation; fall back to a fresh draw.
  Eigen::Vector4d u;
  for (int j = 0; j < 4; ++j) u[j] = rng.uniform();
  return bounds.denormalize(u);
}

History optimize(const Evaluator& evaluate, const Bounds& bounds, int n0,
                 int iters, const BoConfig& config, Rng& rng) {
  bounds.validate();
  History history;
  double incumbent = -std::numeric_limits<double>::infinity();

  const auto run_trial = [&](const GraspPose& pose, int iteration) {
    EvalRecord record;
    try {
      record = evaluate(pose);
    } catch (const std::exception&) {
      record = EvalRecord{};
      record.pose = pose;
      record.q_c = 0;
      record.reason = TrialReason::EvaluatorError;
      record.y = 0.0;
    }
    incumbent = std::max(incumbent, record.y);
    history.entries.push_back({iteration, std::move(record), incumbent});
  };

  int iteration = 0;
  for (const GraspPose& pose : initial_design(bounds, n0, rng))
    run_trial(pose, ++iteration);

  Eigen::MatrixXd X(n0, 4);
  Eigen::VectorXd y(n0);
  for (int i = 0; i < n0; ++i) {
    X.row(i) = bounds.normalize(history.entries[i].record.pose).transpose();
    y[i] = history.entries[i].record.y;
  }
  if (iters == 0) return history;

  SurrogateModel model = fit(X, y, config.gp, rng);
  for (int t = 0; t < iters; ++t) {
    const GraspPose pose =
        maximize_acquisition(model, incumbent, bounds, config.acquisition, rng);
    run_trial(pose, ++iteration);
    model = update(model, bounds.normalize(pose),
                   history.entries.back().record.y, rng);
  }
  return history;
}

}  // namespace graspbo
