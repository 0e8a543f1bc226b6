#include "bqvc/ald.hpp"

#include <cmath>
#include <stdexcept>

namespace bqvc {

QuantileLevel::QuantileLevel(double tau) : tau_(tau) {
  if (!(tau > 0.0 && tau < 1.0))
    throw std::invalid_argument("quantile level must lie in (0,1)");
}

AldConstants ald_constants(QuantileLevel level) {
  const double tau = level.value();
  const double spread = tau * (1.0 - tau);
  return {(1.0 - 2.0 * tau) / spread, 2.0 / spread};
}

double check_loss(double residual, QuantileLevel level) {
  const double tau = level.value();
  return residual * (tau - (residual < 0.0 ? 1.0 : 0.0));
}

double ald_log_density(double residual, double theta, QuantileLevel level) {
  if (!(theta > 0.0)) throw std::invalid_argument("ALD theta must be > 0");
  const double tau = level.value();
  return std::log(tau * (1.0 - tau) * theta) - theta * check_loss(residual, level);
}

double ald_cdf(double residual, double theta, QuantileLevel level) {
  if (!(theta > 0.0)) throw std::invalid_argument("ALD theta must be > 0");
  const double tau = level.value();
  if (residual < 0.0) return tau * std::exp(theta * (1.0 - tau) * residual);
  return 1.0 - (1.0 - tau) * std::exp(-theta * tau * residual);
}

double ald_quantile(double prob, double theta, QuantileLevel level) {
  if (!(theta > 0.0)) throw std::invalid_argument("ALD theta must be > 0");
  if (!(prob > 0.0 && prob < 1.0))
    throw std::invalid_argument("ALD quantile probability must lie in (0,1)");
  const double tau = level.value();
  if (prob < tau) return std::log(prob / tau) / (theta * (1.0 - tau));
  return -std::log((1.0 - prob) / (1.0 - tau)) / (theta * tau);
}

}  // namespace bqvc
