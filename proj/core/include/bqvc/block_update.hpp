#pragma once

#include <Eigen/Dense>

#include "bqvc/random.hpp"

namespace bqvc {

// Gaussian full conditional of one coefficient block under the weighted
// working likelihood exp(-1/2 sum_i w_i (t_i - Z_i^T a)^2) and a zero-mean
// normal prior. Every sampler variant funnels its block updates through
// this type: quantile models use w_i = theta / (kappa2^2 u_i) and
// t_i = partial residual - kappa1 u_i, Gaussian models use w_i = 1 / sigma^2.
struct BlockConditional {
  Eigen::LLT<Eigen::MatrixXd> precision;  // Cholesky of Sigma^{-1}
  Eigen::VectorXd mean;
  // log of the slab-to-spike marginal likelihood ratio:
  // -(d/2) log(v) + 1/2 log|Sigma| + 1/2 mu^T Sigma^{-1} mu, v the slab
  // variance. Only meaningful for isotropic priors.
  double log_slab_ratio = 0.0;

  Eigen::MatrixXd covariance() const;
};

// Isotropic prior N(0, prior_variance I).
BlockConditional block_conditional(const Eigen::Ref<const Eigen::MatrixXd>& z,
                                   const Eigen::VectorXd& weights,
                                   const Eigen::VectorXd& target,
                                   double prior_variance);

// General prior N(0, prior_precision^{-1}).
BlockConditional block_conditional(const Eigen::Ref<const Eigen::MatrixXd>& z,
                                   const Eigen::VectorXd& weights,
                                   const Eigen::VectorXd& target,
                                   const Eigen::MatrixXd& prior_precision);

// P(block == 0 | rest) for a spike-and-slab prior with slab N(0, g I):
// pi0 / (pi0 + (1 - pi0) |g I|^{-1/2} |Sigma|^{1/2} exp(mu^T Sigma^{-1} mu / 2)).
double spike_probability(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma,
                         double slab_variance, double pi0);

// Same quantity from a precomputed log slab ratio; evaluated as a logistic
// function of the log odds so large ratios do not overflow.
double spike_probability_from_log_ratio(double log_slab_ratio, double pi0);

struct BlockDraw {
  Eigen::VectorXd value;
  bool included = true;
};

// Spike with probability `spike_prob`, otherwise a normal draw. No uniform is
// consumed when spike_prob is exactly 0 or 1.
BlockDraw draw_spike_slab(Rng& rng, const BlockConditional& conditional,
                          double spike_prob);

Eigen::VectorXd draw_normal(Rng& rng, const BlockConditional& conditional);

}  // namespace bqvc
