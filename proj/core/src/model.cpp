#include "bqvc/model.hpp"

#include <cmath>

namespace bqvc {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::bqrvcss: return "bqrvcss";
    case Method::bqrvc: return "bqrvc";
    case Method::bvcss: return "bvcss";
    case Method::bvc: return "bvc";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "bqrvcss") return Method::bqrvcss;
  if (name == "bqrvc") return Method::bqrvc;
  if (name == "bvcss") return Method::bvcss;
  if (name == "bvc") return Method::bvc;
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected bqrvcss, bqrvc, bvcss or bvc)");
}

bool is_quantile(Method method) {
  return method == Method::bqrvcss || method == Method::bqrvc;
}

bool uses_spike_slab(Method method) {
  return method == Method::bqrvcss || method == Method::bvcss;
}

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw std::invalid_argument(std::string("hyperparameter ") + name +
                                " must be positive");
}

}  // namespace

void PriorConfig::validate() const {
  require_positive(a, "a");
  require_positive(b, "b");
  require_positive(c, "c");
  require_positive(m, "m");
  require_positive(e, "e");
  require_positive(f, "f");
}

void GaussianPriorConfig::validate() const {
  require_positive(s, "s");
  require_positive(h, "h");
  require_positive(t, "t");
  require_positive(psi, "psi");
  require_positive(a, "a");
  require_positive(b, "b");
}

Eigen::MatrixXd prior_precision(const Eigen::MatrixXd& covariance, Eigen::Index k,
                                const char* name) {
  if (covariance.size() == 0)
    return Eigen::MatrixXd::Identity(k, k) / kDefaultPriorVariance;
  if (covariance.rows() != k || covariance.cols() != k)
    throw std::invalid_argument(std::string(name) + " must be " +
                                std::to_string(k) + " x " + std::to_string(k));
  Eigen::LLT<Eigen::MatrixXd> llt(covariance);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument(std::string(name) + " is not positive definite");
  return llt.solve(Eigen::MatrixXd::Identity(k, k));
}

void McmcOptions::validate() const {
  if (burn_in < 0) throw std::invalid_argument("burn-in must be >= 0");
  if (thin < 1) throw std::invalid_argument("thin must be >= 1");
  if (iterations <= burn_in)
    throw std::invalid_argument("iterations must exceed burn-in");
  if (stored_draws() < 1)
    throw std::invalid_argument("no draws would be stored after burn-in and thinning");
}

}  // namespace bqvc
