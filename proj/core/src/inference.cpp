#include "bqvc/inference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bqvc {

namespace {

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("credible level must lie in (0,1)");
}

// Type-7 quantile by selection; reorders `buffer`.
double select_quantile(Eigen::VectorXd& buffer, double prob) {
  const Eigen::Index count = buffer.size();
  const double h = static_cast<double>(count - 1) * prob;
  const auto lo = static_cast<Eigen::Index>(std::floor(h));
  double* data = buffer.data();
  std::nth_element(data, data + lo, data + count);
  const double below = data[lo];
  if (lo + 1 >= count) return below;
  const double above = *std::min_element(data + lo + 1, data + count);
  return below + (h - static_cast<double>(lo)) * (above - below);
}

}  // namespace

double sorted_quantile(const double* sorted, Eigen::Index count, double prob) {
  if (count == 0) throw std::invalid_argument("quantile of an empty sample");
  if (!(prob >= 0.0 && prob <= 1.0))
    throw std::invalid_argument("quantile probability must lie in [0,1]");
  const double h = static_cast<double>(count - 1) * prob;
  const auto lo = static_cast<Eigen::Index>(std::floor(h));
  const Eigen::Index hi = std::min(lo + 1, count - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double empirical_quantile(Eigen::VectorXd values, double prob) {
  std::sort(values.data(), values.data() + values.size());
  return sorted_quantile(values.data(), values.size(), prob);
}

InclusionSummary inclusion_probabilities(const PosteriorSamples& samples,
                                         double threshold) {
  if (!uses_spike_slab(samples.method))
    throw std::invalid_argument(
        "inclusion probabilities need a spike-and-slab sampler; use ci_selection "
        "for " + std::string(to_string(samples.method)));
  const auto& layout = samples.layout;
  InclusionSummary out;
  out.threshold = threshold;
  out.probs.resize(layout.p);
  for (Eigen::Index j = 1; j <= layout.p; ++j) {
    out.probs[j - 1] = samples.pooled(layout.inclusion(j)).mean();
    if (out.probs[j - 1] >= threshold) out.selected.push_back(static_cast<int>(j));
  }
  return out;
}

bool block_interval_excludes_zero(const Eigen::MatrixXd& block_draws, double level) {
  check_level(level);
  const double tail = 0.5 * (1.0 - level);
  for (Eigen::Index s = 0; s < block_draws.cols(); ++s) {
    Eigen::VectorXd col = block_draws.col(s);
    std::sort(col.data(), col.data() + col.size());
    const double lo = sorted_quantile(col.data(), col.size(), tail);
    const double hi = sorted_quantile(col.data(), col.size(), 1.0 - tail);
    if (lo > 0.0 || hi < 0.0) return true;
  }
  return false;
}

std::vector<int> ci_selection(const PosteriorSamples& samples, double level) {
  std::vector<int> selected;
  for (Eigen::Index j = 1; j <= samples.layout.p; ++j)
    if (block_interval_excludes_zero(samples.pooled_block(j), level))
      selected.push_back(static_cast<int>(j));
  return selected;
}

std::vector<int> select_predictors(const PosteriorSamples& samples) {
  if (uses_spike_slab(samples.method)) return inclusion_probabilities(samples).selected;
  return ci_selection(samples);
}

CurveEstimate curve_from_draws(const Eigen::MatrixXd& block_draws,
                               const Eigen::MatrixXd& grid_basis,
                               const Eigen::VectorXd& grid, double level) {
  check_level(level);
  if (grid_basis.rows() != grid.size() || grid_basis.cols() != block_draws.cols())
    throw std::invalid_argument("grid basis does not match draws or grid");
  const Eigen::Index points = grid.size();
  CurveEstimate out{grid, Eigen::VectorXd::Zero(points), Eigen::VectorXd::Zero(points),
                    Eigen::VectorXd::Zero(points)};
  if (block_draws.rows() == 0) throw std::invalid_argument("no posterior draws");
  if (block_draws.isZero(0.0)) return out;
  const double tail = 0.5 * (1.0 - level);
  const Eigen::MatrixXd curves = block_draws * grid_basis.transpose();  // M x G
  Eigen::VectorXd column(curves.rows());
  for (Eigen::Index t = 0; t < points; ++t) {
    column = curves.col(t);
    out.median[t] = select_quantile(column, 0.5);
    out.lower[t] = select_quantile(column, tail);
    out.upper[t] = select_quantile(column, 1.0 - tail);
  }
  return out;
}

CurveEstimate curve_estimate(const PosteriorSamples& samples,
                             const Eigen::MatrixXd& grid_basis,
                             const Eigen::VectorXd& grid, Eigen::Index j,
                             double level) {
  if (j < 0 || j > samples.layout.p) throw std::out_of_range("curve index outside 0..p");
  return curve_from_draws(samples.pooled_block(j), grid_basis, grid, level);
}

std::vector<ScalarSummary> posterior_scalar_summaries(const PosteriorSamples& samples,
                                                      double level) {
  check_level(level);
  const double tail = 0.5 * (1.0 - level);
  const auto& layout = samples.layout;
  std::vector<Eigen::Index> columns;
  for (Eigen::Index k = 0; k < layout.q; ++k) columns.push_back(layout.beta(k));
  columns.push_back(layout.scale());
  columns.push_back(layout.shrinkage());
  if (uses_spike_slab(samples.method)) columns.push_back(layout.pi0());
  std::vector<ScalarSummary> out;
  for (Eigen::Index column : columns) {
    Eigen::VectorXd draws = samples.pooled(column);
    std::sort(draws.data(), draws.data() + draws.size());
    out.push_back({layout.column_name(column, samples.method),
                   sorted_quantile(draws.data(), draws.size(), 0.5),
                   sorted_quantile(draws.data(), draws.size(), tail),
                   sorted_quantile(draws.data(), draws.size(), 1.0 - tail)});
  }
  return out;
}

}  // namespace bqvc
