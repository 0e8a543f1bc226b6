#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "bqvc/ald.hpp"
#include "bqvc/basis.hpp"
#include "bqvc/dataset.hpp"
#include "bqvc/model.hpp"
#include "bqvc/random.hpp"

namespace bqvc {

// Column layout of one stored draw:
//   alpha (p+1)*d | beta q | scale | shrinkage | pi0 | slab scales p | inclusion p
// scale is theta (quantile) or sigma^2 (Gaussian); shrinkage is eta^2 or
// lambda^2; slab scales are g_j or zeta_j^2. Inclusion flags are stored as
// 0.0 / 1.0.
struct ParameterLayout {
  Eigen::Index p = 0;
  Eigen::Index d = 0;
  Eigen::Index q = 0;

  Eigen::Index alpha(Eigen::Index j, Eigen::Index s = 0) const { return j * d + s; }
  Eigen::Index beta(Eigen::Index k) const { return (p + 1) * d + k; }
  Eigen::Index scale() const { return (p + 1) * d + q; }
  Eigen::Index shrinkage() const { return scale() + 1; }
  Eigen::Index pi0() const { return scale() + 2; }
  Eigen::Index slab(Eigen::Index j) const { return scale() + 2 + j; }
  Eigen::Index inclusion(Eigen::Index j) const { return scale() + 2 + p + j; }
  Eigen::Index columns() const { return scale() + 3 + 2 * p; }

  std::string column_name(Eigen::Index column, Method method) const;

  friend bool operator==(const ParameterLayout&, const ParameterLayout&) = default;
};

struct ChainDraws {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  Eigen::MatrixXd values;  // stored draws x layout.columns()
};

struct ModelSpec {
  Method method = Method::bqrvcss;
  double tau = 0.5;  // ignored by the Gaussian samplers
  PriorConfig priors;
  GaussianPriorConfig gaussian_priors;
};

struct PosteriorSamples {
  Method method = Method::bqrvcss;
  double tau = 0.5;
  SplineConfig spline{2, 2};
  ParameterLayout layout;
  McmcOptions mcmc;
  std::vector<ChainDraws> chains;

  Eigen::Index draws_per_chain() const {
    return chains.empty() ? 0 : chains.front().values.rows();
  }
  Eigen::Index total_draws() const;
  // One column concatenated over chains in chain order.
  Eigen::VectorXd pooled(Eigen::Index column) const;
  // Coefficients of alpha block j over all chains, total_draws x d.
  Eigen::MatrixXd pooled_block(Eigen::Index j) const;
};

// Runs one chain from the default initial state. Deterministic in `rng`.
PosteriorSamples run_chain(const Dataset& data, const SplineConfig& spline,
                           const ModelSpec& model, const McmcOptions& mcmc, Rng rng);

// Runs `chains` independent chains concurrently; chain c uses
// Rng(seed, c). Results are merged in chain order.
PosteriorSamples run_chains(const Dataset& data, const SplineConfig& spline,
                            const ModelSpec& model, const McmcOptions& mcmc,
                            std::uint64_t seed, int chains);

}  // namespace bqvc
