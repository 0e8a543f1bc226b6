#include "bqvc/quantile_sampler.hpp"

#include <cmath>
#include <string>

namespace bqvc {

SamplerState SamplerState::initial(Eigen::Index n, Eigen::Index p, Eigen::Index d,
                                   Eigen::Index q) {
  SamplerState s;
  s.alpha.assign(static_cast<std::size_t>(p + 1), Eigen::VectorXd::Zero(d));
  s.beta = Eigen::VectorXd::Zero(q);
  s.u_tilde = Eigen::VectorXd::Ones(n);
  s.g = Eigen::VectorXd::Ones(p);
  s.inclusion.assign(static_cast<std::size_t>(p), false);
  return s;
}

void SamplerState::check_invariants() const {
  if (!(theta > 0.0)) throw StateError("theta must be positive");
  if (!(eta_sq > 0.0)) throw StateError("eta^2 must be positive");
  if (!(pi0 >= 0.0 && pi0 <= 1.0)) throw StateError("pi0 outside [0,1]");
  if (!(u_tilde.array() > 0.0).all()) throw StateError("u_tilde must be positive");
  if (!(g.array() > 0.0).all()) throw StateError("slab scales must be positive");
  if (inclusion.size() + 1 != alpha.size())
    throw StateError("inclusion flags do not match block count");
  for (std::size_t j = 1; j < alpha.size(); ++j) {
    if (inclusion[j - 1] != !alpha[j].isZero(0.0))
      throw StateError("inclusion flag of block " + std::to_string(j) +
                       " disagrees with its coefficients");
  }
}

QuantileSampler::QuantileSampler(const ExpandedDesign& design, const Dataset& data,
                                 QuantileLevel tau, PriorConfig priors,
                                 bool spike_slab)
    : design_(&design),
      data_(&data),
      tau_(tau),
      constants_(ald_constants(tau)),
      priors_(std::move(priors)),
      spike_slab_(spike_slab),
      state_(SamplerState::initial(data.n(), design.p(), design.d(), data.q())),
      predictor_(design, data) {
  data.validate();
  if (design.n() != data.n() || design.p() != data.p())
    throw std::invalid_argument("expanded design does not match dataset");
  priors_.validate();
  beta_precision_ = prior_precision(priors_.sigma_beta, data.q(), "sigma_beta");
  alpha0_precision_ = prior_precision(priors_.sigma_alpha0, design.d(), "sigma_alpha0");
  if (!spike_slab_) {
    state_.pi0 = 0.0;
  }
}

void QuantileSampler::set_state(SamplerState state) {
  const auto p = design_->p();
  const auto d = design_->d();
  if (static_cast<Eigen::Index>(state.alpha.size()) != p + 1)
    throw std::invalid_argument("state has wrong number of alpha blocks");
  for (const auto& a : state.alpha)
    if (a.size() != d) throw std::invalid_argument("alpha block has wrong length");
  if (state.beta.size() != data_->q() || state.u_tilde.size() != data_->n() ||
      state.g.size() != p || static_cast<Eigen::Index>(state.inclusion.size()) != p)
    throw std::invalid_argument("state dimensions do not match the model");
  state.check_invariants();
  state_ = std::move(state);
  predictor_.recompute(state_.alpha, state_.beta);
}

double QuantileSampler::residual_without_block(Eigen::Index i, Eigen::Index block,
                                               bool subtract_offset) const {
  const Eigen::VectorXd& current =
      block == kBetaBlock ? state_.beta : state_.alpha[static_cast<std::size_t>(block)];
  double r = predictor_.partial_residual(i, block, current);
  if (subtract_offset) r -= constants_.kappa1 * state_.u_tilde[i];
  return r;
}

Eigen::VectorXd QuantileSampler::weights() const {
  return (state_.theta / constants_.kappa2_sq) * state_.u_tilde.cwiseInverse();
}

Eigen::VectorXd QuantileSampler::offset_target(const Eigen::VectorXd& partial) const {
  return partial - constants_.kappa1 * state_.u_tilde;
}

InverseGaussianParams QuantileSampler::latent_u_conditional(Eigen::Index i) const {
  const double r = data_->y[i] - predictor_.value()[i];
  const double magnitude = std::max(std::abs(r), kResidualFloor);
  const double k1sq = constants_.kappa1 * constants_.kappa1;
  const double k2sq = constants_.kappa2_sq;
  return {std::sqrt(k1sq + 2.0 * k2sq) / magnitude,
          state_.theta * (k1sq / k2sq + 2.0)};
}

BlockConditional QuantileSampler::alpha_conditional(Eigen::Index j) const {
  const auto& current = state_.alpha[static_cast<std::size_t>(j)];
  return block_conditional(design_->block(j), weights(),
                           offset_target(predictor_.partial_residual(j, current)),
                           state_.g[j - 1]);
}

double QuantileSampler::spike_probability(Eigen::Index j) const {
  if (!spike_slab_) return 0.0;
  return spike_probability_from_log_ratio(alpha_conditional(j).log_slab_ratio,
                                          state_.pi0);
}

BlockConditional QuantileSampler::alpha0_conditional() const {
  return block_conditional(
      design_->block(0), weights(),
      offset_target(predictor_.partial_residual(0, state_.alpha[0])),
      alpha0_precision_);
}

BlockConditional QuantileSampler::beta_conditional() const {
  return block_conditional(
      data_->e, weights(),
      offset_target(predictor_.partial_residual(kBetaBlock, state_.beta)),
      beta_precision_);
}

GammaParams QuantileSampler::theta_conditional() const {
  const Eigen::VectorXd shifted = offset_target(predictor_.residual());
  const double quad =
      (shifted.array().square() / state_.u_tilde.array()).sum() / constants_.kappa2_sq;
  const double n = static_cast<double>(data_->n());
  return {1.5 * n + priors_.a, 0.5 * quad + state_.u_tilde.sum() + priors_.b};
}

GammaParams QuantileSampler::eta_sq_conditional() const {
  const double d = static_cast<double>(design_->d());
  const double p = static_cast<double>(design_->p());
  return {0.5 * (d + 1.0) * p + priors_.c, 0.5 * state_.g.sum() + priors_.m};
}

SlabScaleConditional QuantileSampler::g_conditional(Eigen::Index j) const {
  const auto& a = state_.alpha[static_cast<std::size_t>(j)];
  const double norm_sq = a.squaredNorm();
  const double d = static_cast<double>(design_->d());
  SlabScaleConditional out{};
  if (state_.inclusion[j - 1] && norm_sq == 0.0)
    throw StateError("block " + std::to_string(j) +
                     " is flagged as included but has zero norm");
  if (norm_sq == 0.0) {
    out.block_is_zero = true;
    // Spike: g is untouched by the likelihood and keeps its Gamma prior.
    // Without a spike the zero vector is a null event; use the limit of the
    // generalized inverse Gaussian conditional as the norm goes to zero.
    out.gamma = {spike_slab_ ? 0.5 * (d + 1.0) : 0.5, 0.5 * state_.eta_sq};
  } else {
    out.block_is_zero = false;
    out.reciprocal = {std::sqrt(state_.eta_sq / norm_sq), state_.eta_sq};
  }
  return out;
}

BetaParams QuantileSampler::pi0_conditional() const {
  if (!spike_slab_)
    throw std::logic_error("pi0 is not part of the model without spike-and-slab");
  double nonzero = 0.0;
  for (bool flag : state_.inclusion) nonzero += flag ? 1.0 : 0.0;
  const double p = static_cast<double>(design_->p());
  return {priors_.e + (p - nonzero), priors_.f + nonzero};
}

void QuantileSampler::update_latent_u(Rng& rng) {
  for (Eigen::Index i = 0; i < data_->n(); ++i) {
    const auto params = latent_u_conditional(i);
    state_.u_tilde[i] = 1.0 / sample_inverse_gaussian(rng, params.mean, params.shape);
  }
}

void QuantileSampler::set_block(Eigen::Index j, Eigen::VectorXd value) {
  auto& slot = state_.alpha[static_cast<std::size_t>(j)];
  predictor_.replace(j, slot, value);
  slot = std::move(value);
}

void QuantileSampler::update_alpha_block(Eigen::Index j, Rng& rng) {
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

void QuantileSampler::update_alpha0(Rng& rng) {
  set_block(0, draw_normal(rng, alpha0_conditional()));
}

void QuantileSampler::update_beta(Rng& rng) {
  if (data_->q() == 0) return;
  Eigen::VectorXd draw = draw_normal(rng, beta_conditional());
  predictor_.replace(kBetaBlock, state_.beta, draw);
  state_.beta = std::move(draw);
}

void QuantileSampler::update_theta(Rng& rng) {
  const auto params = theta_conditional();
  state_.theta = sample_gamma(rng, params.shape, params.rate);
}

void QuantileSampler::update_eta_sq(Rng& rng) {
  const auto params = eta_sq_conditional();
  state_.eta_sq = sample_gamma(rng, params.shape, params.rate);
}

void QuantileSampler::update_g(Rng& rng) {
  for (Eigen::Index j = 1; j <= design_->p(); ++j) {
    const auto c = g_conditional(j);
    state_.g[j - 1] =
        c.block_is_zero
            ? sample_gamma(rng, c.gamma.shape, c.gamma.rate)
            : 1.0 / sample_inverse_gaussian(rng, c.reciprocal.mean, c.reciprocal.shape);
  }
}

void QuantileSampler::update_pi0(Rng& rng) {
  if (!spike_slab_) return;
  const auto params = pi0_conditional();
  state_.pi0 = sample_beta(rng, params.a, params.b);
}

void QuantileSampler::sweep(Rng& rng) {
  predictor_.recompute(state_.alpha, state_.beta);
  update_latent_u(rng);
  for (Eigen::Index j = 1; j <= design_->p(); ++j) update_alpha_block(j, rng);
  update_alpha0(rng);
  update_beta(rng);
  update_theta(rng);
  update_eta_sq(rng);
  update_g(rng);
  update_pi0(rng);
}

}  // namespace bqvc
