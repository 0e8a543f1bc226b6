#include "bqvc/gaussian_sampler.hpp"

#include <cmath>
#include <string>

namespace bqvc {

GaussianSamplerState GaussianSamplerState::initial(Eigen::Index p, Eigen::Index d,
                                                   Eigen::Index q) {
  GaussianSamplerState s;
  s.alpha.assign(static_cast<std::size_t>(p + 1), Eigen::VectorXd::Zero(d));
  s.beta = Eigen::VectorXd::Zero(q);
  s.zeta_sq = Eigen::VectorXd::Ones(p);
  s.inclusion.assign(static_cast<std::size_t>(p), false);
  return s;
}

void GaussianSamplerState::check_invariants() const {
  if (!(sigma_sq > 0.0)) throw StateError("sigma^2 must be positive");
  if (!(lambda_sq > 0.0)) throw StateError("lambda^2 must be positive");
  if (!(pi0 >= 0.0 && pi0 <= 1.0)) throw StateError("pi0 outside [0,1]");
  if (!(zeta_sq.array() > 0.0).all()) throw StateError("slab scales must be positive");
  if (inclusion.size() + 1 != alpha.size())
    throw StateError("inclusion flags do not match block count");
  for (std::size_t j = 1; j < alpha.size(); ++j) {
    if (inclusion[j - 1] != !alpha[j].isZero(0.0))
      throw StateError("inclusion flag of block " + std::to_string(j) +
                       " disagrees with its coefficients");
  }
}

GaussianSampler::GaussianSampler(const ExpandedDesign& design, const Dataset& data,
                                 GaussianPriorConfig priors, bool spike_slab)
    : design_(&design),
      data_(&data),
      priors_(std::move(priors)),
      spike_slab_(spike_slab),
      state_(GaussianSamplerState::initial(design.p(), design.d(), data.q())),
      predictor_(design, data) {
  data.validate();
  if (design.n() != data.n() || design.p() != data.p())
    throw std::invalid_argument("expanded design does not match dataset");
  priors_.validate();
  beta_precision_ = prior_precision(priors_.sigma_beta, data.q(), "sigma_beta");
  alpha0_precision_ = prior_precision(priors_.sigma_alpha0, design.d(), "sigma_alpha0");
  if (!spike_slab_) state_.pi0 = 0.0;
}

void GaussianSampler::set_state(GaussianSamplerState state) {
  const auto p = design_->p();
  if (static_cast<Eigen::Index>(state.alpha.size()) != p + 1)
    throw std::invalid_argument("state has wrong number of alpha blocks");
  for (const auto& a : state.alpha)
    if (a.size() != design_->d())
      throw std::invalid_argument("alpha block has wrong length");
  if (state.beta.size() != data_->q() || state.zeta_sq.size() != p ||
      static_cast<Eigen::Index>(state.inclusion.size()) != p)
    throw std::invalid_argument("state dimensions do not match the model");
  state.check_invariants();
  state_ = std::move(state);
  predictor_.recompute(state_.alpha, state_.beta);
}

Eigen::VectorXd GaussianSampler::weights() const {
  return Eigen::VectorXd::Constant(data_->n(), 1.0 / state_.sigma_sq);
}

Eigen::Index GaussianSampler::included_count() const {
  Eigen::Index count = 0;
  for (bool flag : state_.inclusion) count += flag ? 1 : 0;
  return count;
}

BlockConditional GaussianSampler::alpha_conditional(Eigen::Index j) const {
  const auto& current = state_.alpha[static_cast<std::size_t>(j)];
  return block_conditional(design_->block(j), weights(),
                           predictor_.partial_residual(j, current),
                           state_.sigma_sq * state_.zeta_sq[j - 1]);
}

double GaussianSampler::spike_probability(Eigen::Index j) const {
  if (!spike_slab_) return 0.0;
  return spike_probability_from_log_ratio(alpha_conditional(j).log_slab_ratio,
                                          state_.pi0);
}

BlockConditional GaussianSampler::alpha0_conditional() const {
  return block_conditional(design_->block(0), weights(),
                           predictor_.partial_residual(0, state_.alpha[0]),
                           alpha0_precision_);
}

BlockConditional GaussianSampler::beta_conditional() const {
  return block_conditional(data_->e, weights(),
                           predictor_.partial_residual(kBetaBlock, state_.beta),
                           beta_precision_);
}

InverseGammaParams GaussianSampler::sigma_sq_conditional() const {
  const double n = static_cast<double>(data_->n());
  const double d = static_cast<double>(design_->d());
  // Without a spike every block is in the slab, so the count is p.
  const double slab_blocks =
      spike_slab_ ? static_cast<double>(included_count()) : static_cast<double>(design_->p());
  double penalty = 0.0;
  for (Eigen::Index j = 1; j <= design_->p(); ++j)
    penalty += state_.alpha[static_cast<std::size_t>(j)].squaredNorm() / state_.zeta_sq[j - 1];
  return {0.5 * n + 0.5 * d * slab_blocks + priors_.s,
          0.5 * predictor_.residual().squaredNorm() + 0.5 * penalty + priors_.h};
}

SlabScaleConditional GaussianSampler::zeta_sq_conditional(Eigen::Index j) const {
  const double norm_sq = state_.alpha[static_cast<std::size_t>(j)].squaredNorm();
  const double d = static_cast<double>(design_->d());
  SlabScaleConditional out{};
  if (state_.inclusion[j - 1] && norm_sq == 0.0)
    throw StateError("block " + std::to_string(j) +
                     " is flagged as included but has zero norm");
  if (norm_sq == 0.0) {
    out.block_is_zero = true;
    out.gamma = {spike_slab_ ? 0.5 * (d + 1.0) : 0.5, 0.5 * state_.lambda_sq};
  } else {
    out.block_is_zero = false;
    out.reciprocal = {std::sqrt(state_.sigma_sq * state_.lambda_sq / norm_sq),
                      state_.lambda_sq};
  }
  return out;
}

GammaParams GaussianSampler::lambda_sq_conditional() const {
  const double d = static_cast<double>(design_->d());
  const double p = static_cast<double>(design_->p());
  return {0.5 * (d + 1.0) * p + priors_.t, 0.5 * state_.zeta_sq.sum() + priors_.psi};
}

BetaParams GaussianSampler::pi0_conditional() const {
  if (!spike_slab_)
    throw std::logic_error("pi0 is not part of the model without spike-and-slab");
  const double nonzero = static_cast<double>(included_count());
  const double p = static_cast<double>(design_->p());
  return {p + priors_.a - nonzero, priors_.b + nonzero};
}

void GaussianSampler::set_block(Eigen::Index j, Eigen::VectorXd value) {
  auto& slot = state_.alpha[static_cast<std::size_t>(j)];
  predictor_.replace(j, slot, value);
  slot = std::move(value);
}

void GaussianSampler::update_alpha_block(Eigen::Index j, Rng& rng) {
  if (j < 1 || j > design_->p())
    throw std::out_of_range("alpha block index must lie in 1..p");
  const BlockConditional conditional = alpha_conditional(j);
  if (spike_slab_) {
    const double l =
        spike_probability_from_log_ratio(conditional.log_slab_ratio, state_.pi0);
    BlockDraw draw = draw_spike_slab(rng, conditional, l);
    state_.inclusion[j - 1] = draw.included;
    set_block(j, std::move(draw.value));
  } else {
    state_.inclusion[j - 1] = true;
    set_block(j, draw_normal(rng, conditional));
  }
}

void GaussianSampler::update_alpha0(Rng& rng) {
  set_block(0, draw_normal(rng, alpha0_conditional()));
}

void GaussianSampler::update_beta(Rng& rng) {
  if (data_->q() == 0) return;
  Eigen::VectorXd draw = draw_normal(rng, beta_conditional());
  predictor_.replace(kBetaBlock, state_.beta, draw);
  state_.beta = std::move(draw);
}

void GaussianSampler::update_sigma_sq(Rng& rng) {
  const auto params = sigma_sq_conditional();
  state_.sigma_sq = sample_inverse_gamma(rng, params.shape, params.scale);
}

void GaussianSampler::update_zeta_sq(Rng& rng) {
  for (Eigen::Index j = 1; j <= design_->p(); ++j) {
    const auto c = zeta_sq_conditional(j);
    state_.zeta_sq[j - 1] =
        c.block_is_zero
            ? sample_gamma(rng, c.gamma.shape, c.gamma.rate)
            : 1.0 / sample_inverse_gaussian(rng, c.reciprocal.mean, c.reciprocal.shape);
  }
}

void GaussianSampler::update_lambda_sq(Rng& rng) {
  const auto params = lambda_sq_conditional();
  state_.lambda_sq = sample_gamma(rng, params.shape, params.rate);
}

void GaussianSampler::update_pi0(Rng& rng) {
  if (!spike_slab_) return;
  const auto params = pi0_conditional();
  state_.pi0 = sample_beta(rng, params.a, params.b);
}

void GaussianSampler::sweep(Rng& rng) {
  predictor_.recompute(state_.alpha, state_.beta);
  for (Eigen::Index j = 1; j <= design_->p(); ++j) update_alpha_block(j, rng);
  update_alpha0(rng);
  update_beta(rng);
  update_sigma_sq(rng);
  update_zeta_sq(rng);
  update_lambda_sq(rng);
  update_pi0(rng);
}

}  // namespace bqvc
