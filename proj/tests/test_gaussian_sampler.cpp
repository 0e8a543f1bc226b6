#include <doctest.h>

#include <bqvc/gaussian_sampler.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

#include "fixtures.hpp"

using bqvc::GaussianSampler;
using bqvc::GaussianSamplerState;

namespace {

struct Fixture {
  bqvc::Dataset data;
  bqvc::ExpandedDesign design;
  Fixture(bqvc::Dataset d, bqvc::SplineConfig cfg) : data(std::move(d)), design(data, cfg) {}
};

GaussianSamplerState included_state(bqvc::Rng& rng, const Fixture& f) {
  auto s = GaussianSamplerState::initial(f.design.p(), f.design.d(), f.data.q());
  for (std::size_t j = 0; j < s.alpha.size(); ++j) s.alpha[j] = testing::random_vector(rng, f.design.d());
  for (auto&& flag : s.inclusion) flag = true;
  s.beta = testing::random_vector(rng, f.data.q());
  for (Eigen::Index j = 0; j < s.zeta_sq.size(); ++j) s.zeta_sq[j] = bqvc::sample_gamma(rng, 2.0, 1.0);
  s.sigma_sq = 0.8;
  s.lambda_sq = 1.9;
  s.pi0 = 0.3;
  return s;
}

}  // namespace

TEST_SUITE("gaussian_sampler") {

TEST_CASE("slab conditional matches the dense formula") {
  bqvc::Rng rng(1);
  Fixture f(testing::small_dataset(rng, 6, 2, 1), bqvc::SplineConfig(1, 0));
  GaussianSampler sampler(f.design, f.data, {}, true);
  const auto s = included_state(rng, f);
  sampler.set_state(s);
  for (Eigen::Index j = 1; j <= 2; ++j) {
    const Eigen::MatrixXd z = f.design.block(j);
    const Eigen::VectorXd r = testing::dense_partial_residual(f.design, f.data, s.alpha, s.beta, j);
    const Eigen::MatrixXd inner =
        (z.transpose() * z + Eigen::MatrixXd::Identity(2, 2) / s.zeta_sq[j - 1]).inverse();
    const auto c = sampler.alpha_conditional(j);
    CHECK((c.covariance() - s.sigma_sq * inner).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((c.mean - inner * z.transpose() * r).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("spike probability against quadrature, d = 1") {
  bqvc::Rng rng(2);
  Fixture f(testing::small_dataset(rng, 3, 1, 0), bqvc::SplineConfig(0, 0));
  GaussianSampler sampler(f.design, f.data, {}, true);
  auto s = GaussianSamplerState::initial(1, 1, 0);
  s.sigma_sq = 0.7;
  s.zeta_sq[0] = 1.6;
  s.pi0 = 0.45;
  s.alpha[0] = Eigen::VectorXd::Constant(1, 0.2);
  sampler.set_state(s);

  const Eigen::VectorXd z = f.design.block(1).col(0);
  const Eigen::VectorXd r = f.data.y - f.design.block(0) * s.alpha[0];
  const double slab_var = s.sigma_sq * s.zeta_sq[0];
  auto integrand = [&](double a) {
    const double log_ratio = -0.5 * ((r - a * z).squaredNorm() - r.squaredNorm()) / s.sigma_sq;
    return std::exp(log_ratio - 0.5 * a * a / slab_var) / std::sqrt(2 * M_PI * slab_var);
  };
  const double slab = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, -30.0, 30.0, 20, 1e-14);
  const double oracle = s.pi0 / (s.pi0 + (1 - s.pi0) * slab);
  CHECK(std::abs(sampler.spike_probability(1) - oracle) / oracle < 1e-6);
}

TEST_CASE("scale conditionals") {
  bqvc::Rng rng(3);
  Fixture f(testing::small_dataset(rng, 20, 10, 0), bqvc::SplineConfig(2, 2));
  GaussianSampler ss(f.design, f.data, {}, true);
  auto s = GaussianSamplerState::initial(10, 5, 0);
  for (std::size_t j : {2u, 5u}) {
    s.alpha[j] = Eigen::VectorXd::Ones(5);
    s.inclusion[j - 1] = true;
  }
  ss.set_state(s);
  CHECK(ss.sigma_sq_conditional().shape == doctest::Approx(16.0));
  const double want_scale = 0.5 * ss.residuals().squaredNorm() + 0.5 * 10.0 + 1.0;
  CHECK(ss.sigma_sq_conditional().scale == doctest::Approx(want_scale));
  CHECK(ss.lambda_sq_conditional().shape == doctest::Approx(31.0));
  CHECK(ss.lambda_sq_conditional().rate == doctest::Approx(0.5 * 10 + 1.0));

  for (std::size_t j : {1u, 7u, 9u}) {
    s.alpha[j] = Eigen::VectorXd::Ones(5);
    s.inclusion[j - 1] = true;
  }
  s.alpha[5].setZero();
  s.inclusion[4] = false;
  s.alpha[7].setZero();
  s.inclusion[6] = false;
  ss.set_state(s);
  CHECK(ss.pi0_conditional().a == 8.0);
  CHECK(ss.pi0_conditional().b == 4.0);

  GaussianSampler plain(f.design, f.data, {}, false);
  auto full = included_state(rng, f);
  plain.set_state(full);
  CHECK(plain.sigma_sq_conditional().shape == doctest::Approx(36.0));
  CHECK(plain.lambda_sq_conditional().shape == doctest::Approx(31.0));
  CHECK_THROWS_AS(plain.pi0_conditional(), std::logic_error);
}

TEST_CASE("zeta conditional branches") {
  bqvc::Rng rng(4);
  Fixture f(testing::small_dataset(rng, 5, 2, 0), bqvc::SplineConfig(2, 2));
  GaussianSampler sampler(f.design, f.data, {}, true);
  auto s = GaussianSamplerState::initial(2, 5, 0);
  s.lambda_sq = 4.0;
  s.sigma_sq = 2.0;
  s.alpha[2] = Eigen::VectorXd::Constant(5, 1.0);
  s.inclusion[1] = true;
  sampler.set_state(s);
  const auto zero = sampler.zeta_sq_conditional(1);
  CHECK(zero.block_is_zero);
  CHECK(zero.gamma.shape == doctest::Approx(3.0));
  CHECK(zero.gamma.rate == doctest::Approx(2.0));
  const auto slab = sampler.zeta_sq_conditional(2);
  CHECK(slab.reciprocal.mean == doctest::Approx(std::sqrt(8.0 / 5.0)));
  CHECK(slab.reciprocal.shape == doctest::Approx(4.0));
}

TEST_CASE("pi0 = 0 sweep matches the sampler without a spike") {
  bqvc::Rng rng(5);
  Fixture f(testing::small_dataset(rng, 15, 4, 1), bqvc::SplineConfig(1, 1));
  auto s = included_state(rng, f);
  s.pi0 = 0.0;
  GaussianSampler with(f.design, f.data, {}, true);
  GaussianSampler without(f.design, f.data, {}, false);
  with.set_state(s);
  without.set_state(s);
  bqvc::Rng a(31), b(31);
  with.sweep(a);
  without.sweep(b);
  for (std::size_t j = 0; j <= 4; ++j) CHECK(with.state().alpha[j] == without.state().alpha[j]);
  CHECK(with.state().beta == without.state().beta);
  CHECK(with.state().sigma_sq == without.state().sigma_sq);
  CHECK(with.state().zeta_sq == without.state().zeta_sq);
  CHECK(with.state().lambda_sq == without.state().lambda_sq);
}

TEST_CASE("invariants over sweeps") {
  bqvc::Rng rng(6);
  Fixture f(testing::small_dataset(rng, 30, 5, 0), bqvc::SplineConfig(2, 1));
  GaussianSampler ss(f.design, f.data, {}, true);
  GaussianSampler plain(f.design, f.data, {}, false);
  for (int it = 0; it < 200; ++it) {
    ss.sweep(rng);
    plain.sweep(rng);
    CHECK_NOTHROW(ss.state().check_invariants());
    CHECK_NOTHROW(plain.state().check_invariants());
    for (std::size_t j = 1; j <= 5; ++j) CHECK_FALSE(plain.state().alpha[j].isZero(0.0));
  }
}

}
