#pragma once

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <vector>

#include <bqvc/random.hpp>

namespace testing {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
  double n = 0.0;
};

inline Moments moments(const std::vector<double>& xs) {
  Moments m;
  m.n = static_cast<double>(xs.size());
  for (double x : xs) m.mean += x;
  m.mean /= m.n;
  for (double x : xs) m.var += (x - m.mean) * (x - m.mean);
  m.var /= m.n - 1.0;
  return m;
}

inline std::vector<double> draws(int count, const std::function<double()>& f) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (auto& x : out) x = f();
  return out;
}

// Sample mean within k standard errors of `mean`, given the true variance.
inline void check_mean(const std::vector<double>& xs, double mean, double var, double k = 3.0) {
  const Moments m = moments(xs);
  const double se = std::sqrt(var / m.n);
  CHECK(std::abs(m.mean - mean) <= k * se);
}

// Sample variance within k standard errors, using the fourth central moment
// estimated from the sample.
inline void check_variance(const std::vector<double>& xs, double var, double k = 3.0) {
  const Moments m = moments(xs);
  double m4 = 0.0;
  for (double x : xs) m4 += std::pow(x - m.mean, 4);
  m4 /= m.n;
  const double se = std::sqrt(std::max(m4 - m.var * m.var, 0.0) / m.n);
  CHECK(std::abs(m.var - var) <= k * se);
}

inline Eigen::MatrixXd random_matrix(bqvc::Rng& rng, Eigen::Index r, Eigen::Index c) {
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal();
  return m;
}

inline Eigen::VectorXd random_vector(bqvc::Rng& rng, Eigen::Index n) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.normal();
  return v;
}

}  // namespace testing
