#include <doctest.h>

#include <bqvc/block_update.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

#include "support.hpp"

namespace {

using boost::math::quadrature::gauss_kronrod;

// log of exp(-1/2 sum w (t - z a)^2) / exp(-1/2 sum w t^2)
double log_lik_ratio(const Eigen::MatrixXd& z, const Eigen::VectorXd& w,
                     const Eigen::VectorXd& t, const Eigen::VectorXd& a) {
  const Eigen::VectorXd r = t - z * a;
  return -0.5 * (w.array() * r.array().square()).sum() +
         0.5 * (w.array() * t.array().square()).sum();
}

double normal_pdf(double x, double var) {
  return std::exp(-0.5 * x * x / var) / std::sqrt(2.0 * M_PI * var);
}

// Spike probability from the slab marginal by 1-d or nested 2-d quadrature.
double quadrature_spike(const Eigen::MatrixXd& z, const Eigen::VectorXd& w,
                        const Eigen::VectorXd& t, double g, double pi0,
                        const bqvc::BlockConditional& c) {
  const Eigen::MatrixXd cov = c.covariance();
  auto window = [&](int s) {
    const double half = 12.0 * std::sqrt(cov(s, s));
    return std::pair{c.mean[s] - half, c.mean[s] + half};
  };
  double slab = 0.0;
  if (z.cols() == 1) {
    const auto [lo, hi] = window(0);
    slab = gauss_kronrod<double, 61>::integrate(
        [&](double a) {
          return normal_pdf(a, g) * std::exp(log_lik_ratio(z, w, t, Eigen::VectorXd::Constant(1, a)));
        },
        lo, hi, 15, 1e-14);
  } else {
    const auto [lo0, hi0] = window(0);
    const auto [lo1, hi1] = window(1);
    slab = gauss_kronrod<double, 61>::integrate(
        [&](double a0) {
          return gauss_kronrod<double, 61>::integrate(
              [&](double a1) {
                return normal_pdf(a0, g) * normal_pdf(a1, g) *
                       std::exp(log_lik_ratio(z, w, t, Eigen::Vector2d(a0, a1)));
              },
              lo1, hi1, 15, 1e-13);
        },
        lo0, hi0, 15, 1e-13);
  }
  return pi0 / (pi0 + (1.0 - pi0) * slab);
}

}  // namespace

TEST_SUITE("block_update") {

TEST_CASE("mean and covariance match dense normal equations") {
  bqvc::Rng rng(1);
  const Eigen::MatrixXd z = testing::random_matrix(rng, 5, 2);
  Eigen::VectorXd w(5);
  for (Eigen::Index i = 0; i < 5; ++i) w[i] = bqvc::sample_gamma(rng, 2.0, 1.0);
  const Eigen::VectorXd t = testing::random_vector(rng, 5);
  const double g = 1.7;

  const auto c = bqvc::block_conditional(z, w, t, g);
  Eigen::MatrixXd precision = Eigen::MatrixXd::Zero(2, 2);
  Eigen::VectorXd linear = Eigen::VectorXd::Zero(2);
  for (Eigen::Index i = 0; i < 5; ++i) {
    precision += w[i] * z.row(i).transpose() * z.row(i);
    linear += w[i] * t[i] * z.row(i).transpose();
  }
  precision += Eigen::MatrixXd::Identity(2, 2) / g;
  const Eigen::MatrixXd sigma = precision.inverse();
  CHECK((c.covariance() - sigma).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((c.mean - sigma * linear).cwiseAbs().maxCoeff() < 1e-12);

  const double s = -0.5 * 2 * std::log(g) + 0.5 * std::log(sigma.determinant()) +
                   0.5 * c.mean.dot(precision * c.mean);
  CHECK(c.log_slab_ratio == doctest::Approx(s).epsilon(1e-12));

  Eigen::MatrixXd prior(2, 2);
  prior << 0.5, 0.1, 0.1, 0.3;
  const auto general = bqvc::block_conditional(z, w, t, prior);
  const Eigen::MatrixXd sigma_g = (precision - Eigen::MatrixXd::Identity(2, 2) / g + prior).inverse();
  CHECK((general.covariance() - sigma_g).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((general.mean - sigma_g * linear).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("spike probability edge cases") {
  const Eigen::Vector2d mu(0.3, -0.2);
  const Eigen::Matrix2d sigma = Eigen::Matrix2d::Identity() * 0.4;
  CHECK(bqvc::spike_probability(mu, sigma, 2.0, 1.0) == 1.0);
  CHECK(bqvc::spike_probability(mu, sigma, 2.0, 0.0) == 0.0);
  CHECK_THROWS_AS(bqvc::spike_probability(mu, sigma, 2.0, 1.2), std::invalid_argument);
  CHECK_THROWS_AS(bqvc::spike_probability(mu, sigma, 0.0, 0.5), std::invalid_argument);

  // no data: Sigma = g I, mu = 0, so l = pi0
  const Eigen::MatrixXd z = Eigen::MatrixXd::Zero(1, 3);
  const auto c = bqvc::block_conditional(z, Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1), 2.5);
  CHECK((c.covariance() - 2.5 * Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(c.mean.isZero(0.0));
  CHECK(bqvc::spike_probability_from_log_ratio(c.log_slab_ratio, 0.37) ==
        doctest::Approx(0.37).epsilon(1e-12));

  // huge ratios saturate without overflow
  CHECK(bqvc::spike_probability_from_log_ratio(1e4, 0.5) == 0.0);
  CHECK(bqvc::spike_probability_from_log_ratio(-1e4, 0.5) == 1.0);
}

TEST_CASE("spike probability agrees with the explicit formula") {
  bqvc::Rng rng(2);
  const Eigen::MatrixXd z = testing::random_matrix(rng, 6, 3);
  const Eigen::VectorXd w = Eigen::VectorXd::Constant(6, 0.8);
  const Eigen::VectorXd t = testing::random_vector(rng, 6);
  const auto c = bqvc::block_conditional(z, w, t, 0.9);
  CHECK(bqvc::spike_probability(c.mean, c.covariance(), 0.9, 0.4) ==
        doctest::Approx(bqvc::spike_probability_from_log_ratio(c.log_slab_ratio, 0.4))
            .epsilon(1e-12));
}

TEST_CASE("spike probability matches quadrature Bayes factors") {
  bqvc::Rng rng(3);
  {
    const Eigen::MatrixXd z = testing::random_matrix(rng, 3, 1);
    const Eigen::VectorXd w = (Eigen::VectorXd(3) << 0.7, 1.3, 0.4).finished();
    const Eigen::VectorXd t = (Eigen::VectorXd(3) << 0.9, -0.2, 1.1).finished();
    const double g = 1.5, pi0 = 0.6;
    const auto c = bqvc::block_conditional(z, w, t, g);
    const double l = bqvc::spike_probability_from_log_ratio(c.log_slab_ratio, pi0);
    const double oracle = quadrature_spike(z, w, t, g, pi0, c);
    CHECK(std::abs(l - oracle) / oracle < 1e-6);
  }
  {
    const Eigen::MatrixXd z = testing::random_matrix(rng, 5, 2);
    const Eigen::VectorXd w = (Eigen::VectorXd(5) << 0.7, 1.3, 0.4, 2.0, 0.9).finished();
    const Eigen::VectorXd t = testing::random_vector(rng, 5);
    const double g = 0.8, pi0 = 0.3;
    const auto c = bqvc::block_conditional(z, w, t, g);
    const double l = bqvc::spike_probability_from_log_ratio(c.log_slab_ratio, pi0);
    const double oracle = quadrature_spike(z, w, t, g, pi0, c);
    CHECK(std::abs(l - oracle) / oracle < 1e-4);
  }
}

TEST_CASE("spike-slab draws") {
  bqvc::Rng rng(4);
  const Eigen::MatrixXd z = testing::random_matrix(rng, 4, 2);
  const auto c = bqvc::block_conditional(z, Eigen::VectorXd::Ones(4), testing::random_vector(rng, 4), 1.0);

  bqvc::Rng a(10), b(10);
  const auto spike = bqvc::draw_spike_slab(a, c, 1.0);
  CHECK_FALSE(spike.included);
  CHECK(spike.value.isZero(0.0));
  CHECK(a.next_u64() == b.next_u64());  // nothing consumed

  bqvc::Rng x(11), y(11);
  const auto slab = bqvc::draw_spike_slab(x, c, 0.0);
  const auto direct = bqvc::draw_normal(y, c);
  CHECK(slab.included);
  CHECK(slab.value == direct);

  int zeros = 0;
  for (int i = 0; i < 20000; ++i) zeros += bqvc::draw_spike_slab(rng, c, 0.3).included ? 0 : 1;
  CHECK(std::abs(zeros / 20000.0 - 0.3) < 3 * std::sqrt(0.21 / 20000));
}

}
