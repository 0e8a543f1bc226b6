#include <doctest.h>

#include <bqvc/random.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "support.hpp"

using testing::check_mean;
using testing::check_variance;
using testing::draws;

namespace {

constexpr int kMillion = 1000000;

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) ++i;
    else ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

}  // namespace

TEST_SUITE("random") {

TEST_CASE("philox known answers") {
  using Block = std::array<std::uint32_t, 4>;
  CHECK(bqvc::philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
        Block{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(bqvc::philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                            {0xffffffffu, 0xffffffffu}) ==
        Block{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(bqvc::philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                            {0xa4093822u, 0x299f31d0u}) ==
        Block{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are reproducible and distinct") {
  bqvc::Rng a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  bool differs_stream = false, differs_seed = false;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differs_stream = differs_stream || x != c.next_u64();
    differs_seed = differs_seed || x != d.next_u64();
  }
  CHECK(differs_stream);
  CHECK(differs_seed);

  bqvc::Rng s(42, 0), t(42, 0);
  for (int i = 0; i < 100; ++i) {
    CHECK(bqvc::sample_gamma(s, 0.7, 1.3) == bqvc::sample_gamma(t, 0.7, 1.3));
    CHECK(bqvc::sample_inverse_gaussian(s, 2.0, 3.0) == bqvc::sample_inverse_gaussian(t, 2.0, 3.0));
    CHECK(s.normal() == t.normal());
  }
}

TEST_CASE("stream cross-correlation") {
  bqvc::Rng a(7, 0), b(7, 1);
  const int n = 100000;
  std::vector<double> x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x[i] = a.normal();
    y[i] = b.normal();
  }
  const auto mx = testing::moments(x), my = testing::moments(y);
  double cov = 0.0;
  for (int i = 0; i < n; ++i) cov += (x[i] - mx.mean) * (y[i] - my.mean);
  cov /= n - 1;
  CHECK(std::abs(cov / std::sqrt(mx.var * my.var)) < 0.01);
}

TEST_CASE("uniform and normal") {
  bqvc::Rng rng(1);
  const auto u = draws(kMillion, [&] { return rng.uniform(); });
  CHECK(*std::min_element(u.begin(), u.end()) > 0.0);
  CHECK(*std::max_element(u.begin(), u.end()) < 1.0);
  check_mean(u, 0.5, 1.0 / 12);
  const auto z = draws(kMillion, [&] { return rng.normal(); });
  check_mean(z, 0.0, 1.0);
  check_variance(z, 1.0);
}

TEST_CASE("inverse Gaussian") {
  bqvc::Rng rng(2);
  const auto a = draws(kMillion, [&] { return bqvc::sample_inverse_gaussian(rng, 2.0, 5.0); });
  check_mean(a, 2.0, 8.0 / 5.0);
  const auto b = draws(kMillion, [&] { return bqvc::sample_inverse_gaussian(rng, 1.0, 4.0); });
  check_mean(b, 1.0, 0.25);
  check_variance(b, 0.25);
  const auto c = draws(10000, [&] { return bqvc::sample_inverse_gaussian(rng, 1.0, 1e8); });
  CHECK(std::sqrt(testing::moments(c).var) < 1e-3);
  // extreme mean/shape ratios stay positive and finite
  for (int i = 0; i < 1000; ++i) {
    const double x = bqvc::sample_inverse_gaussian(rng, 1e10, 1e-3);
    CHECK((x > 0.0 && std::isfinite(x)));
  }
  CHECK_THROWS_AS(bqvc::sample_inverse_gaussian(rng, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(bqvc::sample_inverse_gaussian(rng, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("gamma") {
  bqvc::Rng rng(3);
  const auto a = draws(kMillion, [&] { return bqvc::sample_gamma(rng, 1.0, 4.0); });
  check_mean(a, 0.25, 1.0 / 16);
  const auto b = draws(kMillion, [&] { return bqvc::sample_gamma(rng, 3.5, 2.0); });
  check_mean(b, 1.75, 3.5 / 4);
  check_variance(b, 3.5 / 4);
  const auto c = draws(kMillion, [&] { return bqvc::sample_gamma(rng, 0.5, 0.5); });
  check_mean(c, 1.0, 2.0);
  check_variance(c, 2.0);
  const auto d = draws(kMillion, [&] { return bqvc::sample_gamma(rng, 0.05, 1.0); });
  check_mean(d, 0.05, 0.05);
  CHECK(*std::min_element(d.begin(), d.end()) > 0.0);
  CHECK_THROWS_AS(bqvc::sample_gamma(rng, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(bqvc::sample_gamma(rng, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("inverse gamma") {
  bqvc::Rng rng(4);
  const auto a = draws(kMillion, [&] { return bqvc::sample_inverse_gamma(rng, 3.0, 2.0); });
  check_mean(a, 1.0, 1.0);
  // shape 2 has infinite variance; use the sample variance for the SE
  const auto b = draws(kMillion, [&] { return bqvc::sample_inverse_gamma(rng, 2.0, 2.0); });
  check_mean(b, 2.0, testing::moments(b).var);

  bqvc::Rng r1(5, 0), r2(5, 1);
  const auto inv = draws(100000, [&] { return bqvc::sample_inverse_gamma(r1, 2.5, 1.5); });
  const auto rec = draws(100000, [&] { return 1.0 / bqvc::sample_gamma(r2, 2.5, 1.5); });
  CHECK(ks_two_sample(inv, rec) < 1.63 * std::sqrt(2.0 / 100000));
  CHECK_THROWS_AS(bqvc::sample_inverse_gamma(rng, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("beta") {
  bqvc::Rng rng(7);
  const auto u = draws(100000, [&] { return bqvc::sample_beta(rng, 1.0, 1.0); });
  auto sorted = u;
  std::sort(sorted.begin(), sorted.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    ks = std::max({ks, sorted[i] - static_cast<double>(i) / sorted.size(),
                   static_cast<double>(i + 1) / sorted.size() - sorted[i]});
  CHECK(ks < 1.63 / std::sqrt(100000.0));
  const auto b = draws(kMillion, [&] { return bqvc::sample_beta(rng, 8.0, 4.0); });
  check_mean(b, 2.0 / 3.0, 32.0 / (144.0 * 13.0));
  const auto c = draws(kMillion, [&] { return bqvc::sample_beta(rng, 0.5, 0.5); });
  check_mean(c, 0.5, 0.125);
  CHECK_THROWS_AS(bqvc::sample_beta(rng, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("exponential and bernoulli") {
  bqvc::Rng rng(7);
  check_mean(draws(kMillion, [&] { return bqvc::sample_exponential(rng, 2.0); }), 0.5, 0.25);
  check_mean(draws(kMillion, [&] { return double(bqvc::sample_bernoulli(rng, 0.25)); }), 0.25,
             0.1875);
  for (int i = 0; i < 1000; ++i) {
    CHECK(bqvc::sample_bernoulli(rng, 0.0) == 0);
    CHECK(bqvc::sample_bernoulli(rng, 1.0) == 1);
  }
  CHECK_THROWS_AS(bqvc::sample_exponential(rng, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(bqvc::sample_bernoulli(rng, 1.5), std::invalid_argument);
}

TEST_CASE("multivariate normal") {
  bqvc::Rng rng(8);
  const Eigen::Vector2d mean(1.0, -2.0);
  for (int i = 0; i < 100; ++i) {
    const auto x = bqvc::sample_mvn(rng, mean, 1e-16 * Eigen::Matrix2d::Identity());
    CHECK((x - mean).cwiseAbs().maxCoeff() < 1e-7);
  }

  Eigen::Matrix2d cov;
  cov << 1.0, 0.5, 0.5, 1.0;
  const int n = 100000;
  std::vector<double> x(n), y(n);
  for (int i = 0; i < n; ++i) {
    const auto v = bqvc::sample_mvn(rng, Eigen::Vector2d::Zero(), cov);
    x[i] = v[0];
    y[i] = v[1];
  }
  double sxy = 0.0;
  for (int i = 0; i < n; ++i) sxy += x[i] * y[i];
  const double r = sxy / n / std::sqrt(testing::moments(x).var * testing::moments(y).var);
  CHECK(std::abs(r - 0.5) < 3.0 * (1 - 0.25) / std::sqrt(double(n)));

  std::vector<double> z(n);
  for (auto& v : z) v = bqvc::sample_mvn(rng, Eigen::Vector3d::Zero(), Eigen::Matrix3d::Identity())[1];
  const auto m = testing::moments(z);
  double skew = 0.0, kurt = 0.0;
  for (double v : z) {
    skew += std::pow((v - m.mean), 3);
    kurt += std::pow((v - m.mean), 4);
  }
  skew /= n * std::pow(m.var, 1.5);
  kurt /= n * m.var * m.var;
  CHECK(std::abs(skew) < 3.0 * std::sqrt(6.0 / n));
  CHECK(std::abs(kurt - 3.0) < 3.0 * std::sqrt(24.0 / n));

  Eigen::Matrix2d bad;
  bad << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(bqvc::sample_mvn(rng, Eigen::Vector2d::Zero(), bad), bqvc::DecompositionError);
}

TEST_CASE("multivariate normal from a precision factor") {
  bqvc::Rng rng(9);
  Eigen::Matrix2d precision;
  precision << 2.0, 0.6, 0.6, 1.0;
  const Eigen::LLT<Eigen::MatrixXd> llt{Eigen::MatrixXd(precision)};
  const Eigen::Matrix2d cov = precision.inverse();
  const Eigen::Vector2d mean(0.3, -0.4);
  const int n = 200000;
  std::vector<double> a(n), b(n);
  for (int i = 0; i < n; ++i) {
    const auto v = bqvc::sample_mvn_precision(rng, llt, mean);
    a[i] = v[0];
    b[i] = v[1];
  }
  check_mean(a, mean[0], cov(0, 0));
  check_mean(b, mean[1], cov(1, 1));
  check_variance(a, cov(0, 0));
  check_variance(b, cov(1, 1));
}

}
