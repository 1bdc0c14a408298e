#include "graspbo/gp.hpp"

#include <cmath>

namespace graspbo {

namespace {

constexpr double kJitterLevels[] = {1e-10, 1e-8, 1e-6};

double scaled_distance(const KernelSpec& k, const Eigen::VectorXd& a,
                       const Eigen::VectorXd& b) {
  double r2 = 0.0;
  for (int j = 0; j < a.size(); ++j) {
    const double d = (a[j] - b[j]) / k.lengthscales[j];
    r2 += d * d;
  }
  return std::sqrt(r2);
}

double correlation(KernelFamily family, double r) {
  switch (family) {
    case KernelFamily::Matern52Ard: {
      const double s = std::sqrt(5.0) * r;
      return (1.0 + s + 5.0 * r * r / 3.0) * std::exp(-s);
    }
    case KernelFamily::SquaredExponentialArd:
      return std::exp(-0.5 * r * r);
  }
  return 0.0;
}

/// Number of sampled log-parameters: d lengthscales, log sigma_s, and
/// log sigma_n when the noise is learned.
int param_count(const GpConfig& cfg, int d) {
  return d + 1 + (cfg.learn_noise ? 1 : 0);
}

KernelSpec kernel_from_log_params(const GpConfig& cfg, int d,
                                  const Eigen::VectorXd& p) {
  KernelSpec k;
  k.family = cfg.kernel;
  k.lengthscales = p.head(d).array().exp();
  k.signal_variance = std::exp(2.0 * p[d]);
  k.noise_variance = cfg.learn_noise
                         ? std::max(std::exp(2.0 * p[d + 1]), cfg.noise_floor)
                         : cfg.fixed_noise_variance;
  return k;
}

Eigen::VectorXd initial_log_params(const GpConfig& cfg, int d,
                                   const Eigen::VectorXd& targets) {
  Eigen::VectorXd p(param_count(cfg, d));
  p.head(d).setConstant(cfg.lengthscale_log_mean);
  const double spread = targets.size() > 1
                            ? std::sqrt((targets.array() - targets.mean())
                                            .square()
                                            .sum() /
                                        (targets.size() - 1))
                            : 0.0;
  p[d] = spread > 1e-6 ? std::log(spread) : cfg.signal_log_mean;
  if (cfg.learn_noise) p[d + 1] = cfg.noise_log_mean;
  return p;
}

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& X, const KernelSpec& k,
                              double jitter) {
  const int n = static_cast<int>(X.rows());
  Eigen::MatrixXd K(n, n);
  for (int i = 0; i < n; ++i) {
    K(i, i) = k.signal_variance + k.noise_variance + jitter;
    for (int j = 0; j < i; ++j) {
      const double v = kernel_value(k, X.row(i).transpose(),
                                    X.row(j).transpose());
      K(i, j) = v;
      K(j, i) = v;
    }
  }
  return K;
}

struct Factorization {
  Eigen::MatrixXd L;
  Eigen::VectorXd alpha;
  double log_det_half = 0.0;  // sum log L_ii
  double jitter = 0.0;
};

bool try_factorize(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                   const KernelSpec& k, Factorization& out) {
  for (double jitter : kJitterLevels) {
    const Eigen::MatrixXd K = kernel_matrix(X, k, jitter);
    Eigen::LLT<Eigen::MatrixXd> llt(K);
    if (llt.info() != Eigen::Success) continue;
    out.L = llt.matrixL();
    out.alpha = llt.solve(y);
    out.log_det_half = out.L.diagonal().array().log().sum();
    out.jitter = jitter;
    return true;
  }
  return false;
}

double log_prior(const GpConfig& cfg, int d, const Eigen::VectorXd& p) {
  auto normal_lpdf = [](double x, double mean, double sd) {
    const double z = (x - mean) / sd;
    return -0.5 * z * z - std::log(sd) - 0.5 * std::log(2.0 * M_PI);
  };
  double lp = 0.0;
  for (int j = 0; j < d; ++j)
    lp += normal_lpdf(p[j], cfg.lengthscale_log_mean, cfg.lengthscale_log_sd);
  lp += normal_lpdf(p[d], cfg.signal_log_mean, cfg.signal_log_sd);
  if (cfg.learn_noise)
    lp += normal_lpdf(p[d + 1], cfg.noise_log_mean, cfg.noise_log_sd);
  return lp;
}

/// Unnormalized log posterior over log hyperparameters; -inf when the
/// kernel matrix cannot be factorized.
double log_target(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                  const GpConfig& cfg, const Eigen::VectorXd& p) {
  const int d = static_cast<int>(X.cols());
  const KernelSpec k = kernel_from_log_params(cfg, d, p);
  Factorization f;
  if (!try_factorize(X, y, k, f))
    return -std::numeric_limits<double>::infinity();
  const double lml = -0.5 * y.dot(f.alpha) - f.log_det_half -
                     0.5 * y.size() * std::log(2.0 * M_PI);
  return lml + log_prior(cfg, d, p);
}

/// One univariate slice-sampling move (stepping out + shrinkage, Neal 2003).
void slice_move(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                const GpConfig& cfg, Eigen::VectorXd& p, int coord, Rng& rng,
                double width = 1.0) {
  const double f0 = log_target(X, y, cfg, p);
  const double level = f0 + std::log(std::max(rng.uniform(), 1e-300));
  const double x0 = p[coord];

  double lo = x0 - width * rng.uniform();
  double hi = lo + width;
  auto eval_at = [&](double v) {
    Eigen::VectorXd q = p;
    q[coord] = v;
    return log_target(X, y, cfg, q);
  };
  for (int i = 0; i < 8 && eval_at(lo) > level; ++i) lo -= width;
  for (int i = 0; i < 8 && eval_at(hi) > level; ++i) hi += width;

  for (int i = 0; i < 100; ++i) {
    const double cand = rng.uniform(lo, hi);
    if (eval_at(cand) > level) {
      p[coord] = cand;
      return;
    }
    (cand < x0 ? lo : hi) = cand;
    if (hi - lo < 1e-12) break;
  }
  // Shrinkage exhausted; stay put.
}

void sweep(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
           const GpConfig& cfg, Eigen::VectorXd& p, Rng& rng) {
  for (int j = 0; j < p.size(); ++j) slice_move(X, y, cfg, p, j, rng);
}

SurrogateModel build_model(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           const GpConfig& cfg, Eigen::VectorXd state,
                           int burn, Rng& rng) {
  const int d = static_cast<int>(X.cols());
  SurrogateModel model;
  model.inputs = X;
  model.targets = y;
  model.config = cfg;

  for (int i = 0; i < burn; ++i) sweep(X, y, cfg, state, rng);

  model.samples.reserve(cfg.hyper_samples);
  for (int s = 0; s < cfg.hyper_samples; ++s) {
    sweep(X, y, cfg, state, rng);
    const KernelSpec k = kernel_from_log_params(cfg, d, state);
    Factorization f;
    if (!try_factorize(X, y, k, f))
      throw SingularKernel("kernel matrix not positive definite after jitter");
    model.samples.push_back({k, f.L, f.alpha});
    model.jitter_used = std::max(model.jitter_used, f.jitter);
  }
  model.sampler_state = state;
  model.since_refit = 0;
  return model;
}

}  // namespace

double kernel_value(const KernelSpec& k, const Eigen::VectorXd& a,
                    const Eigen::VectorXd& b) {
  return k.signal_variance * correlation(k.family, scaled_distance(k, a, b));
}

double log_marginal_likelihood(const Eigen::MatrixXd& inputs,
                               const Eigen::VectorXd& targets,
                               const KernelSpec& kernel, double jitter) {
  const Eigen::MatrixXd K = kernel_matrix(inputs, kernel, jitter);
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  if (llt.info() != Eigen::Success)
    throw SingularKernel("log_marginal_likelihood: factorization failed");
  const Eigen::VectorXd alpha = llt.solve(targets);
  const Eigen::MatrixXd L = llt.matrixL();
  return -0.5 * targets.dot(alpha) - L.diagonal().array().log().sum() -
         0.5 * targets.size() * std::log(2.0 * M_PI);
}

Eigen::VectorXd log_marginal_likelihood_gradient(
    const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
    const KernelSpec& kernel, double jitter) {
  const int n = static_cast<int>(inputs.rows());
  const int d = static_cast<int>(inputs.cols());
  const Eigen::MatrixXd K = kernel_matrix(inputs, kernel, jitter);
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  if (llt.info() != Eigen::Success)
    throw SingularKernel("lml_gradient: factorization failed");
  const Eigen::VectorXd alpha = llt.solve(targets);
  const Eigen::MatrixXd Kinv =
      llt.solve(Eigen::MatrixXd::Identity(n, n));
  const Eigen::MatrixXd W = alpha * alpha.transpose() - Kinv;

  // Gradient wrt (log l_1..d, log sigma_s, log sigma_n): 1/2 tr(W dK/dtheta).
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(d + 2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXd diff =
          inputs.row(i).transpose() - inputs.row(j).transpose();
      const double r = scaled_distance(kernel, inputs.row(i).transpose(),
                                       inputs.row(j).transpose());
      for (int c = 0; c < d; ++c) {
        const double u2 = diff[c] * diff[c] /
                          (kernel.lengthscales[c] * kernel.lengthscales[c]);
        double dk;
        if (kernel.family == KernelFamily::Matern52Ard) {
          const double s = std::sqrt(5.0) * r;
          dk = kernel.signal_variance * (5.0 / 3.0) * std::exp(-s) *
               (1.0 + s) * u2;
        } else {
          dk = kernel.signal_variance * std::exp(-0.5 * r * r) * u2;
        }
        grad[c] += 0.5 * W(i, j) * dk;
      }
      const double k_sig =
          kernel.signal_variance * correlation(kernel.family, r);
      grad[d] += 0.5 * W(i, j) * 2.0 * k_sig;
    }
    grad[d + 1] += 0.5 * W(i, i) * 2.0 * kernel.noise_variance;
  }
  return grad;
}

SurrogateModel fit(const Eigen::MatrixXd& inputs,
                   const Eigen::VectorXd& targets, const GpConfig& config,
                   Rng& rng) {
  if (inputs.rows() < 1) throw Error("fit needs at least one observation");
  if (inputs.rows() != targets.size())
    throw Error("fit: inputs/targets size mismatch");
  const Eigen::VectorXd start =
      initial_log_params(config, static_cast<int>(inputs.cols()), targets);
  return build_model(inputs, targets, config, start, config.burn_in, rng);
}

PredictiveMixture predict(const SurrogateModel& model,
                          const Eigen::VectorXd& x) {
  if (model.samples.empty()) throw Error("predict on an unfit model");
  PredictiveMixture mix;
  mix.components.reserve(model.samples.size());
  const int n = model.size();
  Eigen::VectorXd kx(n);
  for (const auto& s : model.samples) {
    for (int i = 0; i < n; ++i)
      kx[i] = kernel_value(s.kernel, model.inputs.row(i).transpose(), x);
    const double mu = kx.dot(s.alpha);
    const Eigen::VectorXd v =
        s.chol_lower.triangularView<Eigen::Lower>().solve(kx);
    const double var =
        std::max(0.0, s.kernel.signal_variance - v.squaredNorm());
    mix.components.emplace_back(mu, var);
  }
  return mix;
}

SurrogateModel update(const SurrogateModel& model, const Eigen::VectorXd& x,
                      double y, Rng& rng) {
  const int n = model.size();
  Eigen::MatrixXd X(n + 1, model.dimension());
  X.topRows(n) = model.inputs;
  X.row(n) = x.transpose();
  Eigen::VectorXd t(n + 1);
  t.head(n) = model.targets;
  t[n] = y;

  if (model.since_refit + 1 >= model.config.refit_every) {
    return build_model(X, t, model.config, model.sampler_state,
                       model.config.warm_burn_in, rng);
  }

  // Between refits: extend each cached Cholesky factor by one row.
  SurrogateModel out;
  out.inputs = X;
  out.targets = t;
  out.config = model.config;
  out.sampler_state = model.sampler_state;
  out.jitter_used = model.jitter_used;
  out.since_refit = model.since_refit + 1;
  out.samples.reserve(model.samples.size());
  for (const auto& s : model.samples) {
    Eigen::VectorXd kx(n);
    for (int i = 0; i < n; ++i)
      kx[i] = kernel_value(s.kernel, model.inputs.row(i).transpose(), x);
    const Eigen::VectorXd b =
        s.chol_lower.triangularView<Eigen::Lower>().solve(kx);
    const double diag = s.kernel.signal_variance + s.kernel.noise_variance;
    double c2 = diag - b.squaredNorm();
    bool extended = false;
    HyperSample ns;
    ns.kernel = s.kernel;
    for (double jitter : kJitterLevels) {
      if (c2 + jitter <= 0.0) continue;
      ns.chol_lower = Eigen::MatrixXd::Zero(n + 1, n + 1);
      ns.chol_lower.topLeftCorner(n, n) = s.chol_lower;
      ns.chol_lower.row(n).head(n) = b.transpose();
      ns.chol_lower(n, n) = std::sqrt(c2 + jitter);
      out.jitter_used = std::max(out.jitter_used, jitter);
      extended = true;
      break;
    }
    if (!extended) {
      // Fall back to a full refactorization of this sample.
      Factorization f;
      if (!try_factorize(X, t, s.kernel, f))
        throw SingularKernel("update: kernel matrix not positive definite");
      ns.chol_lower = f.L;
      out.jitter_used = std::max(out.jitter_used, f.jitter);
    }
    const Eigen::VectorXd half =
        ns.chol_lower.triangularView<Eigen::Lower>().solve(t);
    ns.alpha =
        ns.chol_lower.transpose().triangularView<Eigen::Upper>().solve(half);
    out.samples.push_back(std::move(ns));
  }
  return out;
}

}  // namespace graspbo
