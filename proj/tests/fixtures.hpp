#pragma once

#include <Eigen/Dense>

#include <bqvc/basis.hpp>
#include <bqvc/dataset.hpp>
#include <bqvc/random.hpp>

#include "support.hpp"

namespace testing {

inline bqvc::Dataset small_dataset(bqvc::Rng& rng, Eigen::Index n, Eigen::Index p,
                                   Eigen::Index q) {
  bqvc::Dataset d;
  d.v.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) d.v[i] = rng.uniform();
  d.x = random_matrix(rng, n, p);
  d.e = random_matrix(rng, n, q);
  d.y = random_vector(rng, n);
  return d;
}

// Y - E beta - sum_{k != skip} Z_k alpha_k computed from the dense design.
inline Eigen::VectorXd dense_partial_residual(const bqvc::ExpandedDesign& design,
                                              const bqvc::Dataset& data,
                                              const std::vector<Eigen::VectorXd>& alpha,
                                              const Eigen::VectorXd& beta, Eigen::Index skip,
                                              bool skip_beta = false) {
  Eigen::VectorXd r = data.y;
  if (!skip_beta && data.q() > 0) r -= data.e * beta;
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(alpha.size()); ++k)
    if (k != skip) r -= design.matrix().middleCols(k * design.d(), design.d()) * alpha[k];
  return r;
}

}  // namespace testing
