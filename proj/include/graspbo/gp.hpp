#pragma once

#include <Eigen/Dense>
#include <vector>

#include "graspbo/errors.hpp"
#include "graspbo/rng.hpp"

namespace graspbo {

enum class KernelFamily { Matern52Ard, SquaredExponentialArd };

/// Stationary ARD kernel with signal variance and observation noise; the
/// sampled hyperparameters are (lengthscales, signal variance) plus the
/// noise variance when it is learned.
struct KernelSpec {
  KernelFamily family = KernelFamily::Matern52Ard;
  Eigen::VectorXd lengthscales;   // per input dimension, > 0
  double signal_variance = 1.0;   // sigma_s^2
  double noise_variance = 0.0;    // sigma_n^2 >= 0
};

double kernel_value(const KernelSpec& k, const Eigen::VectorXd& a,
                    const Eigen::VectorXd& b);

struct GpConfig {
  KernelFamily kernel = KernelFamily::Matern52Ard;
  int hyper_samples = 10;  // m posterior samples
  int refit_every = 1;     // r: hyperparameter refit cadence in update()
  int burn_in = 30;        // slice-sampler sweeps discarded on a cold fit
  int warm_burn_in = 3;    // sweeps discarded when warm-starting a refit
  bool learn_noise = true;
  double fixed_noise_variance = 0.0;  // used when learn_noise is false
  double noise_floor = 1e-6;          // lower bound on learned sigma_n^2

  // Log-normal priors, parameterized on log(lengthscale), log(sigma_s),
  // log(sigma_n). Inputs are expected in the unit box, outputs O(1).
  double lengthscale_log_mean = -1.2, lengthscale_log_sd = 1.0;
  double signal_log_mean = -1.2, signal_log_sd = 1.0;
  double noise_log_mean = -3.5, noise_log_sd = 1.0;
};

struct HyperSample {
  KernelSpec kernel;
  Eigen::MatrixXd chol_lower;  // L with L L^T = K + sigma_n^2 I + jitter I
  Eigen::VectorXd alpha;       // (K + sigma_n^2 I)^{-1} y
};

/// GP surrogate: observations plus a set of kernel hyperparameter samples
/// with cached factorizations. Immutable; update() returns a new model.
struct SurrogateModel {
  Eigen::MatrixXd inputs;   // n x d
  Eigen::VectorXd targets;  // n
  std::vector<HyperSample> samples;
  GpConfig config;
  double jitter_used = 0.0;          // largest jitter any sample needed
  Eigen::VectorXd sampler_state;     // slice-sampler position (log params)
  int since_refit = 0;

  int dimension() const { return static_cast<int>(inputs.cols()); }
  int size() const { return static_cast<int>(inputs.rows()); }
};

/// Per-hyperparameter-sample predictive means and variances.
struct PredictiveMixture {
  std::vector<std::pair<double, double>> components;  // (mu_i, sigma_i^2)
};

/// Log marginal likelihood of the data under one kernel (plus jitter).
double log_marginal_likelihood(const Eigen::MatrixXd& inputs,
                               const Eigen::VectorXd& targets,
                               const KernelSpec& kernel, double jitter = 0.0);

/// Gradient of the log marginal likelihood with respect to the log
/// hyperparameters (log lengthscales, log sigma_s, log sigma_n); used as a
/// sampler diagnostic and verified against finite differences.
Eigen::VectorXd log_marginal_likelihood_gradient(
    const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
    const KernelSpec& kernel, double jitter = 0.0);

/// Draw hyperparameter samples by coordinate-wise slice sampling on the log
/// marginal likelihood plus log-normal priors, then cache factorizations.
/// Throws SingularKernel when jitter escalation (1e-10 to 1e-6) cannot make
/// a sampled kernel matrix positive definite.
SurrogateModel fit(const Eigen::MatrixXd& inputs,
                   const Eigen::VectorXd& targets, const GpConfig& config,
                   Rng& rng);

/// Exact per-sample conditionals: mu_i = k_i(x,X) K_i^{-1} y and the
/// corresponding posterior variance, clamped at 0.
PredictiveMixture predict(const SurrogateModel& model,
                          const Eigen::VectorXd& x);

/// Append one observation. Refits hyperparameters every `refit_every`
/// appends (warm-started); otherwise extends the cached factorizations.
SurrogateModel update(const SurrogateModel& model, const Eigen::VectorXd& x,
                      double y, Rng& rng);

}  // namespace graspbo
