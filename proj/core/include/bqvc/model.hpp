#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <string_view>

namespace bqvc {

// The four Bayesian varying-coefficient samplers.
//   bqrvcss  quantile likelihood, spike-and-slab group prior
//   bqrvc    quantile likelihood, multivariate Laplace (group lasso) prior
//   bvcss    Gaussian likelihood, spike-and-slab group prior
//   bvc      Gaussian likelihood, multivariate Laplace prior
enum class Method { bqrvcss, bqrvc, bvcss, bvc };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);
bool is_quantile(Method method);
bool uses_spike_slab(Method method);

// Raised when a sampler state violates its invariants.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Hyperparameters of the quantile samplers. Gamma laws are shape/rate.
//   theta ~ Gamma(a, b), eta^2 ~ Gamma(c, m), pi0 ~ Beta(e, f),
//   beta ~ N(0, sigma_beta), alpha_0 ~ N(0, sigma_alpha0).
// Empty covariance matrices mean 100 * I.
struct PriorConfig {
  double a = 1.0, b = 1.0;
  double c = 1.0, m = 1.0;
  double e = 1.0, f = 1.0;
  Eigen::MatrixXd sigma_beta;
  Eigen::MatrixXd sigma_alpha0;

  void validate() const;
};

// Hyperparameters of the Gaussian samplers.
//   sigma^2 ~ Inverse-Gamma(s, h), lambda^2 ~ Gamma(t, psi),
//   pi0 ~ Beta(a, b) (spike-and-slab variant only).
struct GaussianPriorConfig {
  double s = 1.0, h = 1.0;
  double t = 1.0, psi = 1.0;
  double a = 1.0, b = 1.0;
  Eigen::MatrixXd sigma_beta;
  Eigen::MatrixXd sigma_alpha0;

  void validate() const;
};

inline constexpr double kDefaultPriorVariance = 100.0;

// Resolves an optional prior covariance to a k x k SPD matrix and returns its
// inverse. Throws std::invalid_argument on shape mismatch or non-SPD input.
Eigen::MatrixXd prior_precision(const Eigen::MatrixXd& covariance, Eigen::Index k,
                                const char* name);

struct McmcOptions {
  int iterations = 10000;
  int burn_in = 5000;
  int thin = 1;

  int stored_draws() const { return (iterations - burn_in) / thin; }
  void validate() const;
};

struct GammaParams {
  double shape;
  double rate;
};

struct InverseGammaParams {
  double shape;
  double scale;
};

struct BetaParams {
  double a;
  double b;
};

struct InverseGaussianParams {
  double mean;
  double shape;
};

// Conditional of a slab scale (g_j or zeta_j^2). When the block is in the
// spike the scale is drawn from `gamma`; otherwise its reciprocal is drawn
// from `reciprocal`.
struct SlabScaleConditional {
  bool block_is_zero;
  GammaParams gamma;
  InverseGaussianParams reciprocal;
};

}  // namespace bqvc
