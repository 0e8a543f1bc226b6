#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <stdexcept>

namespace bqvc {

// Thrown when a covariance or precision matrix fails Cholesky factorization.
class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One Philox4x32-10 block: 10 rounds of the Salmon et al. bijection.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key);

// Counter-based generator (Philox4x32-10). The key is the 64-bit seed and
// the high half of the 128-bit counter is the stream id, so every
// (seed, stream_id) pair is an independent, reproducible sequence. One
// handle belongs to one chain; copies are independent replicas of the state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();
  // Uniform on the open interval (0,1), 53-bit resolution.
  double uniform();
  // Standard normal (Marsaglia polar method).
  double normal();

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

// Inverse Gaussian IG(mean, shape), density proportional to
// x^{-3/2} exp(-shape (x - mean)^2 / (2 mean^2 x)). Michael-Schucany-Haas.
double sample_inverse_gaussian(Rng& rng, double mean, double shape);

// Gamma with shape/rate parameterization: mean shape / rate.
double sample_gamma(Rng& rng, double shape, double rate);

// Reciprocal of Gamma(shape, rate = scale): mean scale / (shape - 1).
double sample_inverse_gamma(Rng& rng, double shape, double scale);

double sample_beta(Rng& rng, double a, double b);
double sample_exponential(Rng& rng, double rate);
int sample_bernoulli(Rng& rng, double prob);

// mean + L z with covariance = L L^T. Throws DecompositionError if the
// covariance is not positive definite.
Eigen::VectorXd sample_mvn(Rng& rng, const Eigen::VectorXd& mean,
                           const Eigen::MatrixXd& covariance);

// Draw from N(P^{-1} b, P^{-1}) given the Cholesky factor of the precision P.
Eigen::VectorXd sample_mvn_precision(Rng& rng,
                                     const Eigen::LLT<Eigen::MatrixXd>& precision,
                                     const Eigen::VectorXd& mean);

}  // namespace bqvc
