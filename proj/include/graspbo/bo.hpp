#pragma once

#include <functional>
#include <vector>

#include "graspbo/gp.hpp"
#include "graspbo/pose.hpp"
#include "graspbo/record.hpp"

namespace graspbo {

struct HistoryEntry {
  int iteration = 0;  // 1-based, spanning design + acquisition phases
  EvalRecord record;
  double incumbent = 0.0;  // max y over entries up to and including this one
};

/// Ordered, append-only trial log with the running incumbent.
struct History {
  std::vector<HistoryEntry> entries;

  double incumbent() const {
    return entries.empty() ? 0.0 : entries.back().incumbent;
  }

  const EvalRecord* best_record() const;
};

/// Expected Improvement over the hyperparameter mixture:
/// sum_i [(mu_i - rho) Phi(z_i) + sigma_i phi(z_i)], z_i = (mu_i - rho)/sigma_i,
/// with zero-variance components contributing max(0, mu_i - rho).
double expected_improvement(const PredictiveMixture& mix, double rho);

/// Seeded Latin hypercube over the pose box; every 1D projection occupies
/// n0 distinct strata.
std::vector<GraspPose> initial_design(const Bounds& bounds, int n0, Rng& rng);

struct AcquisitionConfig {
  int candidates = 1024;  // uniform seed points
  int refine_top = 8;     // Nelder-Mead starts
  int nm_iters = 120;
  double duplicate_tol = 1e-6;  // max-abs pose distance
};

/// Multi-start EI maximization: uniform candidates plus simplex refinement,
/// projected to the bounds, lexicographic tie-breaking, and a guard that
/// never returns a pose already present in the model within duplicate_tol.
GraspPose maximize_acquisition(const SurrogateModel& model, double rho,
                               const Bounds& bounds,
                               const AcquisitionConfig& acq, Rng& rng);

using Evaluator = std::function<EvalRecord(const GraspPose&)>;

struct BoConfig {
  GpConfig gp;
  AcquisitionConfig acquisition;
};

/// The optimization loop: n0 design evaluations, then `iters` acquisition
/// steps, updating the surrogate after every evaluation. Evaluator
/// exceptions become y = 0 records tagged EvaluatorError.
History optimize(const Evaluator& evaluate, const Bounds& bounds, int n0,
                 int iters, const BoConfig& config, Rng& rng);

}  // namespace graspbo
