#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "bqvc/posterior.hpp"

namespace bqvc {

// Linear interpolation between order statistics (type 7): for sorted x of
// length M, h = (M - 1) prob and Q = x[floor h] + (h - floor h)(x[floor h + 1] - x[floor h]).
double empirical_quantile(Eigen::VectorXd values, double prob);
double sorted_quantile(const double* sorted, Eigen::Index count, double prob);

struct InclusionSummary {
  Eigen::VectorXd probs;      // probs[j-1] for predictor j
  std::vector<int> selected;  // predictors j with probs >= threshold
  double threshold = 0.5;
};

// Median probability model. Throws std::invalid_argument for samplers
// without a point mass; use ci_selection for those.
InclusionSummary inclusion_probabilities(const PosteriorSamples& samples,
                                         double threshold = 0.5);

// Group j is selected when the equal-tailed `level` credible interval of at
// least one of its d spline coefficients excludes zero.
bool block_interval_excludes_zero(const Eigen::MatrixXd& block_draws, double level);
std::vector<int> ci_selection(const PosteriorSamples& samples, double level = 0.95);

// MPM for spike-and-slab samplers, credible intervals otherwise.
std::vector<int> select_predictors(const PosteriorSamples& samples);

struct CurveEstimate {
  Eigen::VectorXd grid;
  Eigen::VectorXd median;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

// Pointwise median and equal-tailed band of gamma^(m)(v) = alpha^(m)T pi(v)
// over draws m. `block_draws` is M x d, `grid_basis` is G x d.
CurveEstimate curve_from_draws(const Eigen::MatrixXd& block_draws,
                               const Eigen::MatrixXd& grid_basis,
                               const Eigen::VectorXd& grid, double level = 0.95);

CurveEstimate curve_estimate(const PosteriorSamples& samples,
                             const Eigen::MatrixXd& grid_basis,
                             const Eigen::VectorXd& grid, Eigen::Index j,
                             double level = 0.95);

struct ScalarSummary {
  std::string name;
  double median;
  double lower;
  double upper;
};

// Medians and equal-tailed intervals for beta, the likelihood scale (theta
// or sigma^2), the shrinkage parameter and, for spike-and-slab samplers, pi0.
std::vector<ScalarSummary> posterior_scalar_summaries(const PosteriorSamples& samples,
                                                      double level = 0.95);

}  // namespace bqvc
