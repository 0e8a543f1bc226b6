#pragma once

namespace bqvc {

// Quantile level tau, strictly inside (0,1).
class QuantileLevel {
 public:
  explicit QuantileLevel(double tau);
  double value() const { return tau_; }

 private:
  double tau_;
};

// Constants of the exponential/normal mixture form of the asymmetric
// Laplace law: eps = kappa1 * u + kappa2 * sqrt(u / theta) * W with
// u ~ Exp(rate theta), W ~ N(0,1).
struct AldConstants {
  double kappa1;     // (1 - 2 tau) / (tau (1 - tau))
  double kappa2_sq;  // 2 / (tau (1 - tau))
};

AldConstants ald_constants(QuantileLevel tau);

// rho_tau(r) = r (tau - 1{r < 0}).
double check_loss(double residual, QuantileLevel tau);

// log of tau (1 - tau) theta exp(-theta rho_tau(r)). Throws if theta <= 0.
double ald_log_density(double residual, double theta, QuantileLevel tau);

double ald_cdf(double residual, double theta, QuantileLevel tau);
double ald_quantile(double prob, double theta, QuantileLevel tau);

}  // namespace bqvc
