#pragma once

#include <Eigen/Dense>

#include <vector>

#include "bqvc/ald.hpp"
#include "bqvc/basis.hpp"
#include "bqvc/block_update.hpp"
#include "bqvc/dataset.hpp"
#include "bqvc/linear_predictor.hpp"
#include "bqvc/model.hpp"
#include "bqvc/random.hpp"

namespace bqvc {

// Latent quantities of one Gibbs iteration of the quantile samplers. The
// standard-normal W_i of the mixture representation are integrated out.
struct SamplerState {
  std::vector<Eigen::VectorXd> alpha;  // alpha_0 .. alpha_p, each length d
  Eigen::VectorXd beta;                // q
  Eigen::VectorXd u_tilde;             // n, exponential latents
  Eigen::VectorXd g;                   // p slab scales, g[j-1] for block j
  double theta = 1.0;
  double eta_sq = 1.0;
  double pi0 = 0.5;
  std::vector<bool> inclusion;         // p flags, inclusion[j-1] for block j

  // All blocks zero and excluded; unit scales.
  static SamplerState initial(Eigen::Index n, Eigen::Index p, Eigen::Index d,
                              Eigen::Index q);

  // Throws StateError unless positivity holds and every inclusion flag
  // matches whether its block is nonzero.
  void check_invariants() const;
};

// Gibbs sampler for the quantile varying-coefficient model. With
// `spike_slab` true this is BQRVCSS; false gives BQRVC (no point mass,
// no pi0). `design` and `data` must outlive the sampler.
class QuantileSampler {
 public:
  QuantileSampler(const ExpandedDesign& design, const Dataset& data,
                  QuantileLevel tau, PriorConfig priors, bool spike_slab);

  const SamplerState& state() const { return state_; }
  void set_state(SamplerState state);

  bool spike_slab() const { return spike_slab_; }
  const AldConstants& constants() const { return constants_; }
  const PriorConfig& priors() const { return priors_; }

  // Y_i - E_i^T beta - sum_{k != block} alpha_k^T Z_ik, minus kappa1 u_i when
  // `subtract_offset`. `block` is an alpha index 0..p or kBetaBlock.
  double residual_without_block(Eigen::Index i, Eigen::Index block,
                                bool subtract_offset) const;
  // Y - E beta - Z alpha.
  Eigen::VectorXd residuals() const { return predictor_.residual(); }

  // Full conditionals at the current state.
  InverseGaussianParams latent_u_conditional(Eigen::Index i) const;  // of 1/u_i
  BlockConditional alpha_conditional(Eigen::Index j) const;          // j = 1..p
  double spike_probability(Eigen::Index j) const;
  BlockConditional alpha0_conditional() const;
  BlockConditional beta_conditional() const;
  GammaParams theta_conditional() const;
  GammaParams eta_sq_conditional() const;
  SlabScaleConditional g_conditional(Eigen::Index j) const;
  BetaParams pi0_conditional() const;

  void update_latent_u(Rng& rng);
  void update_alpha_block(Eigen::Index j, Rng& rng);
  void update_alpha0(Rng& rng);
  void update_beta(Rng& rng);
  void update_theta(Rng& rng);
  void update_eta_sq(Rng& rng);
  void update_g(Rng& rng);
  void update_pi0(Rng& rng);

  // One sweep: u, alpha_1..alpha_p, alpha_0, beta, theta, eta^2, g, pi0.
  void sweep(Rng& rng);

 private:
  Eigen::VectorXd weights() const;
  Eigen::VectorXd offset_target(const Eigen::VectorXd& partial) const;
  void set_block(Eigen::Index j, Eigen::VectorXd value);

  const ExpandedDesign* design_;
  const Dataset* data_;
  QuantileLevel tau_;
  AldConstants constants_;
  PriorConfig priors_;
  bool spike_slab_;
  Eigen::MatrixXd beta_precision_;
  Eigen::MatrixXd alpha0_precision_;
  SamplerState state_;
  LinearPredictor predictor_;
};

// Residual floor used in the u_i update so the inverse Gaussian mean stays
// finite.
inline constexpr double kResidualFloor = 1e-10;

}  // namespace bqvc
