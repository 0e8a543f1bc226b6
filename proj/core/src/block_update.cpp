#include "bqvc/block_update.hpp"

#include <cmath>
#include <stdexcept>

namespace bqvc {

namespace {

BlockConditional finish(Eigen::MatrixXd precision, const Eigen::VectorXd& linear) {
  BlockConditional out;
  out.precision.compute(precision);
  if (out.precision.info() != Eigen::Success)
    throw DecompositionError("block precision matrix is not positive definite");
  out.mean = out.precision.solve(linear);
  return out;
}

double log_det_from_llt(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

}  // namespace

Eigen::MatrixXd BlockConditional::covariance() const {
  const auto d = mean.size();
  return precision.solve(Eigen::MatrixXd::Identity(d, d));
}

BlockConditional block_conditional(const Eigen::Ref<const Eigen::MatrixXd>& z,
                                   const Eigen::VectorXd& weights,
                                   const Eigen::VectorXd& target,
                                   double prior_variance) {
  if (!(prior_variance > 0.0))
    throw std::invalid_argument("slab variance must be positive");
  const Eigen::MatrixXd zw = z.array().colwise() * weights.array();
  Eigen::MatrixXd precision = z.transpose() * zw;
  precision.diagonal().array() += 1.0 / prior_variance;
  const Eigen::VectorXd linear = zw.transpose() * target;
  BlockConditional out = finish(std::move(precision), linear);
  const double d = static_cast<double>(z.cols());
  // log|Sigma| = -log|P|, mu^T Sigma^{-1} mu = mu^T b.
  out.log_slab_ratio = -0.5 * d * std::log(prior_variance) -
                       0.5 * log_det_from_llt(out.precision) +
                       0.5 * out.mean.dot(linear);
  return out;
}

BlockConditional block_conditional(const Eigen::Ref<const Eigen::MatrixXd>& z,
                                   const Eigen::VectorXd& weights,
                                   const Eigen::VectorXd& target,
                                   const Eigen::MatrixXd& prior_precision) {
  const Eigen::MatrixXd zw = z.array().colwise() * weights.array();
  Eigen::MatrixXd precision = z.transpose() * zw + prior_precision;
  return finish(std::move(precision), zw.transpose() * target);
}

double spike_probability_from_log_ratio(double log_slab_ratio, double pi0) {
  if (!(pi0 >= 0.0 && pi0 <= 1.0))
    throw std::invalid_argument("pi0 must lie in [0,1]");
  if (pi0 == 0.0) return 0.0;
  if (pi0 == 1.0) return 1.0;
  const double log_odds = std::log(pi0) - std::log1p(-pi0) - log_slab_ratio;
  if (log_odds >= 0.0) return 1.0 / (1.0 + std::exp(-log_odds));
  const double e = std::exp(log_odds);
  return e / (1.0 + e);
}

double spike_probability(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma,
                         double slab_variance, double pi0) {
  if (!(slab_variance > 0.0))
    throw std::invalid_argument("slab variance must be positive");
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw DecompositionError("Sigma_j is not positive definite");
  const double d = static_cast<double>(mu.size());
  const double quad = mu.dot(llt.solve(mu));
  const double s = -0.5 * d * std::log(slab_variance) +
                   0.5 * log_det_from_llt(llt) + 0.5 * quad;
  return spike_probability_from_log_ratio(s, pi0);
}

Eigen::VectorXd draw_normal(Rng& rng, const BlockConditional& conditional) {
  return sample_mvn_precision(rng, conditional.precision, conditional.mean);
}

BlockDraw draw_spike_slab(Rng& rng, const BlockConditional& conditional,
                          double spike_prob) {
  bool spike = spike_prob >= 1.0;
  if (spike_prob > 0.0 && spike_prob < 1.0) spike = rng.uniform() < spike_prob;
  if (spike) return {Eigen::VectorXd::Zero(conditional.mean.size()), false};
  return {draw_normal(rng, conditional), true};
}

}  // namespace bqvc
