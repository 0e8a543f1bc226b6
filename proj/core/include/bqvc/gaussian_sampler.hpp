#pragma once

#include <Eigen/Dense>

#include <vector>

#include "bqvc/basis.hpp"
#include "bqvc/block_update.hpp"
#include "bqvc/dataset.hpp"
#include "bqvc/linear_predictor.hpp"
#include "bqvc/model.hpp"
#include "bqvc/random.hpp"

namespace bqvc {

struct GaussianSamplerState {
  std::vector<Eigen::VectorXd> alpha;  // alpha_0 .. alpha_p
  Eigen::VectorXd beta;
  Eigen::VectorXd zeta_sq;             // p slab scales, zeta_sq[j-1] for block j
  double sigma_sq = 1.0;
  double lambda_sq = 1.0;
  double pi0 = 0.5;
  std::vector<bool> inclusion;

  static GaussianSamplerState initial(Eigen::Index p, Eigen::Index d, Eigen::Index q);
  void check_invariants() const;
};

// Gibbs sampler for the mean-regression varying-coefficient model with a
// Gaussian likelihood. Slab covariance is sigma^2 zeta_j^2 I. `spike_slab`
// true gives BVCSS, false gives BVC.
class GaussianSampler {
 public:
  GaussianSampler(const ExpandedDesign& design, const Dataset& data,
                  GaussianPriorConfig priors, bool spike_slab);

  const GaussianSamplerState& state() const { return state_; }
  void set_state(GaussianSamplerState state);
  bool spike_slab() const { return spike_slab_; }

  Eigen::VectorXd residuals() const { return predictor_.residual(); }

  // Mean mu_j and covariance sigma^2 Sigma_j of the slab component.
  BlockConditional alpha_conditional(Eigen::Index j) const;
  double spike_probability(Eigen::Index j) const;
  BlockConditional alpha0_conditional() const;
  BlockConditional beta_conditional() const;
  InverseGammaParams sigma_sq_conditional() const;
  SlabScaleConditional zeta_sq_conditional(Eigen::Index j) const;
  GammaParams lambda_sq_conditional() const;
  BetaParams pi0_conditional() const;

  void update_alpha_block(Eigen::Index j, Rng& rng);
  void update_alpha0(Rng& rng);
  void update_beta(Rng& rng);
  void update_sigma_sq(Rng& rng);
  void update_zeta_sq(Rng& rng);
  void update_lambda_sq(Rng& rng);
  void update_pi0(Rng& rng);

  // alpha_1..alpha_p, alpha_0, beta, sigma^2, zeta^2, lambda^2, pi0.
  void sweep(Rng& rng);

 private:
  Eigen::VectorXd weights() const;
  void set_block(Eigen::Index j, Eigen::VectorXd value);
  Eigen::Index included_count() const;

  const ExpandedDesign* design_;
  const Dataset* data_;
  GaussianPriorConfig priors_;
  bool spike_slab_;
  Eigen::MatrixXd beta_precision_;
  Eigen::MatrixXd alpha0_precision_;
  GaussianSamplerState state_;
  LinearPredictor predictor_;
};

}  // namespace bqvc
