#include "bqvc/simulate.hpp"

#include <boost/math/distributions/lognormal.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bqvc/inference.hpp"

namespace bqvc {

namespace {

// Stream ids reserved for data generation, disjoint from chain streams.
constexpr std::uint64_t kCovariateStream = 0x5100'0000'0000'0001ULL;
constexpr std::uint64_t kIndexStream = 0x5100'0000'0000'0002ULL;
constexpr std::uint64_t kErrorStream = 0x5100'0000'0000'0003ULL;

double mixture_sd(MixtureScale scale) {
  return scale == MixtureScale::variance ? std::sqrt(3.0) : 3.0;
}

const boost::math::normal kStdNormal;

}  // namespace

const char* to_string(CovariateKind kind) {
  return kind == CovariateKind::gene ? "gene" : "snp";
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::normal: return "normal";
    case ErrorKind::normal_mixture: return "normal_mixture";
    case ErrorKind::laplace: return "laplace";
    case ErrorKind::lognormal: return "lognormal";
    case ErrorKind::t2: return "t2";
  }
  return "?";
}

const char* to_string(MixtureScale scale) {
  return scale == MixtureScale::variance ? "variance" : "sd";
}

CovariateKind parse_covariate_kind(const std::string& text) {
  if (text == "gene") return CovariateKind::gene;
  if (text == "snp") return CovariateKind::snp;
  throw std::invalid_argument("unknown covariate kind '" + text + "' (gene|snp)");
}

ErrorKind parse_error_kind(const std::string& text) {
  for (auto k : {ErrorKind::normal, ErrorKind::normal_mixture, ErrorKind::laplace,
                 ErrorKind::lognormal, ErrorKind::t2})
    if (text == to_string(k)) return k;
  throw std::invalid_argument("unknown error kind '" + text +
                              "' (normal|normal_mixture|laplace|lognormal|t2)");
}

MixtureScale parse_mixture_scale(const std::string& text) {
  if (text == "variance") return MixtureScale::variance;
  if (text == "sd") return MixtureScale::sd;
  throw std::invalid_argument("unknown mixture scale '" + text + "' (variance|sd)");
}

void ScenarioSpec::validate() const {
  if (n <= 0) throw std::invalid_argument("scenario n must be positive");
  if (p <= 0) throw std::invalid_argument("scenario p must be positive");
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("scenario tau must lie in (0,1)");
  if (heteroscedastic && p < 2)
    throw std::invalid_argument("heteroscedastic errors need at least two predictors");
}

double true_gamma(Eigen::Index j, double v, bool hard_mode) {
  constexpr double pi = std::numbers::pi;
  switch (j) {
    case 0: return 2.0 + 2.0 * std::sin((hard_mode ? 6.0 : 2.0) * pi * v);
    case 1: return 2.0 * std::exp(2.0 * v - 1.0);
    case 2: return -6.0 * v * (1.0 - v);
    case 3: return -4.0 * v * v * v;
    default:
      if (j < 0) throw std::out_of_range("curve index must be non-negative");
      return 0.0;
  }
}

Eigen::VectorXd TrueCurves::on_grid(Eigen::Index j, const Eigen::VectorXd& grid) const {
  Eigen::VectorXd out(grid.size());
  for (Eigen::Index t = 0; t < grid.size(); ++t) out[t] = (*this)(j, grid[t]);
  return out;
}

std::vector<int> TrueCurves::support() const {
  std::vector<int> out;
  for (int j = 1; j <= 3 && j <= p; ++j) out.push_back(j);
  return out;
}

Eigen::MatrixXd generate_gene_covariates(Rng& rng, Eigen::Index n, Eigen::Index p) {
  // AR(1) recursion with unit marginal variance gives corr 0.5^|j-k|.
  const double rho = 0.5;
  const double innovation = std::sqrt(1.0 - rho * rho);
  Eigen::MatrixXd x(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    double prev = 0.0;
    for (Eigen::Index k = 0; k < p; ++k) {
      const double z = rng.normal();
      prev = k == 0 ? z : rho * prev + innovation * z;
      x(i, k) = prev;
    }
  }
  return x;
}

Eigen::MatrixXd dichotomize_snp(const Eigen::MatrixXd& gene) {
  Eigen::MatrixXd out(gene.rows(), gene.cols());
  for (Eigen::Index k = 0; k < gene.cols(); ++k) {
    const double q1 = empirical_quantile(gene.col(k), 0.25);
    const double q3 = empirical_quantile(gene.col(k), 0.75);
    for (Eigen::Index i = 0; i < gene.rows(); ++i) {
      const double g = gene(i, k);
      out(i, k) = g < q1 ? 0.0 : (g > q3 ? 2.0 : 1.0);
    }
  }
  return out;
}

double base_error_cdf(ErrorKind kind, double x, MixtureScale scale) {
  switch (kind) {
    case ErrorKind::normal: return boost::math::cdf(kStdNormal, x);
    case ErrorKind::normal_mixture:
      return 0.8 * boost::math::cdf(kStdNormal, x) +
             0.2 * boost::math::cdf(kStdNormal, x / mixture_sd(scale));
    case ErrorKind::laplace: return x < 0.0 ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x);
    case ErrorKind::lognormal:
      return x <= 0.0 ? 0.0 : boost::math::cdf(boost::math::lognormal(0.0, 1.0), x);
    case ErrorKind::t2: return 0.5 + x / (2.0 * std::sqrt(2.0 + x * x));
  }
  throw std::logic_error("unhandled error kind");
}

double base_error_density(ErrorKind kind, double x, MixtureScale scale) {
  switch (kind) {
    case ErrorKind::normal: return boost::math::pdf(kStdNormal, x);
    case ErrorKind::normal_mixture: {
      const double s = mixture_sd(scale);
      return 0.8 * boost::math::pdf(kStdNormal, x) +
             0.2 * boost::math::pdf(kStdNormal, x / s) / s;
    }
    case ErrorKind::laplace: return 0.5 * std::exp(-std::abs(x));
    case ErrorKind::lognormal:
      return x <= 0.0 ? 0.0 : boost::math::pdf(boost::math::lognormal(0.0, 1.0), x);
    case ErrorKind::t2: return boost::math::pdf(boost::math::students_t(2.0), x);
  }
  throw std::logic_error("unhandled error kind");
}

double base_error_quantile(ErrorKind kind, double tau, MixtureScale scale) {
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("tau must lie in (0,1)");
  switch (kind) {
    case ErrorKind::normal: return boost::math::quantile(kStdNormal, tau);
    case ErrorKind::laplace:
      return tau < 0.5 ? std::log(2.0 * tau) : -std::log(2.0 - 2.0 * tau);
    case ErrorKind::lognormal: return std::exp(boost::math::quantile(kStdNormal, tau));
    case ErrorKind::t2: return (2.0 * tau - 1.0) / std::sqrt(2.0 * tau * (1.0 - tau));
    case ErrorKind::normal_mixture: {
      const double s = mixture_sd(scale);
      // The mixture quantile lies between the component quantiles.
      const double half_width = std::abs(boost::math::quantile(kStdNormal, tau)) * s + 1.0;
      const auto [a, b] = boost::math::tools::bisect(
          [&](double x) { return base_error_cdf(kind, x, scale) - tau; }, -half_width,
          half_width, boost::math::tools::eps_tolerance<double>(52));
      return 0.5 * (a + b);
    }
  }
  throw std::logic_error("unhandled error kind");
}

double sample_base_error(Rng& rng, ErrorKind kind, MixtureScale scale) {
  switch (kind) {
    case ErrorKind::normal: return rng.normal();
    case ErrorKind::normal_mixture: {
      const bool wide = rng.uniform() >= 0.8;
      const double z = rng.normal();
      return wide ? mixture_sd(scale) * z : z;
    }
    case ErrorKind::laplace: {
      const double u = rng.uniform() - 0.5;
      return u < 0.0 ? std::log(1.0 + 2.0 * u) : -std::log(1.0 - 2.0 * u);
    }
    case ErrorKind::lognormal: return std::exp(rng.normal());
    case ErrorKind::t2: {
      const double u = rng.uniform();
      return (2.0 * u - 1.0) / std::sqrt(2.0 * u * (1.0 - u));
    }
  }
  throw std::logic_error("unhandled error kind");
}

Eigen::VectorXd centered_error_sample(Rng& rng, ErrorKind kind, double tau, Eigen::Index n,
                                      MixtureScale scale) {
  const double shift = base_error_quantile(kind, tau, scale);
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = sample_base_error(rng, kind, scale) - shift;
  return out;
}

Eigen::VectorXd generate_response(const Eigen::MatrixXd& x, const Eigen::VectorXd& v,
                                  const TrueCurves& curves, const Eigen::VectorXd& errors,
                                  bool heteroscedastic) {
  const Eigen::Index n = v.size();
  if (x.rows() != n || errors.size() != n)
    throw std::invalid_argument("response inputs have inconsistent lengths");
  if (heteroscedastic && x.cols() < 2)
    throw std::invalid_argument("heteroscedastic errors need at least two predictors");
  const Eigen::Index active = std::min<Eigen::Index>(x.cols(), 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double mean = curves(0, v[i]);
    for (Eigen::Index j = 1; j <= active; ++j) mean += curves(j, v[i]) * x(i, j - 1);
    y[i] = mean + (heteroscedastic ? (1.0 + x(i, 1)) * errors[i] : errors[i]);
  }
  return y;
}

SimulatedData simulate_dataset(const ScenarioSpec& spec) {
  spec.validate();
  Rng covariate_rng(spec.seed, kCovariateStream);
  Rng index_rng(spec.seed, kIndexStream);
  Rng error_rng(spec.seed, kErrorStream);

  SimulatedData out;
  out.spec = spec;
  out.truth = TrueCurves{spec.p, spec.hard_mode};
  out.support = out.truth.support();

  Eigen::MatrixXd x = generate_gene_covariates(covariate_rng, spec.n, spec.p);
  if (spec.covariate_kind == CovariateKind::snp) x = dichotomize_snp(x);
  Eigen::VectorXd v(spec.n);
  for (Eigen::Index i = 0; i < spec.n; ++i) v[i] = index_rng.uniform();
  const Eigen::VectorXd errors =
      centered_error_sample(error_rng, spec.error_kind, spec.tau, spec.n, spec.mixture_scale);

  out.data.v = std::move(v);
  out.data.x = std::move(x);
  out.data.e.resize(spec.n, 0);
  out.data.y = generate_response(out.data.x, out.data.v, out.truth, errors, spec.heteroscedastic);
  return out;
}

}  // namespace bqvc
