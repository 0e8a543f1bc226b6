#include "bqvc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bqvc {

PsrfValue psrf(const Eigen::MatrixXd& chains) {
  const Eigen::Index n = chains.rows();
  const Eigen::Index m = chains.cols();
  if (m < 2) throw std::invalid_argument("psrf needs at least two chains");
  if (n < 2) throw std::invalid_argument("psrf needs at least two iterations per chain");
  const double nd = static_cast<double>(n);
  const Eigen::RowVectorXd means = chains.colwise().mean();
  const double grand = means.mean();
  const double between =
      nd * (means.array() - grand).square().sum() / static_cast<double>(m - 1);
  double within = 0.0;
  for (Eigen::Index c = 0; c < m; ++c)
    within += (chains.col(c).array() - means[c]).square().sum() / (nd - 1.0);
  within /= static_cast<double>(m);

  PsrfValue out;
  if (within <= 0.0) {
    out.degenerate = true;
    out.divergent = between > 0.0;
    out.value = 1.0;
    return out;
  }
  const double var_plus = (nd - 1.0) / nd * within + between / nd;
  out.value = std::sqrt(var_plus / within);
  return out;
}

std::vector<PsrfValue> psrf_trace(const Eigen::MatrixXd& chains,
                                  const std::vector<Eigen::Index>& checkpoints) {
  std::vector<PsrfValue> out;
  out.reserve(checkpoints.size());
  for (Eigen::Index end : checkpoints) {
    if (end < 2 || end > chains.rows())
      throw std::out_of_range("psrf checkpoint outside the chain length");
    out.push_back(psrf(chains.topRows(end)));
  }
  return out;
}

Eigen::MatrixXd split_chain(const Eigen::VectorXd& chain) {
  const Eigen::Index half = chain.size() / 2;
  Eigen::MatrixXd out(half, 2);
  out.col(0) = chain.head(half);
  out.col(1) = chain.tail(half);
  return out;
}

std::vector<Eigen::Index> default_tracked_columns(const PosteriorSamples& samples,
                                                  const std::vector<int>& blocks) {
  const auto& layout = samples.layout;
  std::vector<Eigen::Index> columns;
  for (int j : blocks) {
    if (j < 0 || j > layout.p) throw std::out_of_range("tracked block outside 0..p");
    for (Eigen::Index s = 0; s < layout.d; ++s) columns.push_back(layout.alpha(j, s));
  }
  columns.push_back(layout.scale());
  return columns;
}

PsrfReport psrf_report(const PosteriorSamples& samples,
                       const std::vector<Eigen::Index>& columns, PsrfMode mode,
                       Eigen::Index checkpoint_step) {
  const auto chain_count = static_cast<Eigen::Index>(samples.chains.size());
  if (mode == PsrfMode::multi_chain && chain_count < 2)
    throw std::invalid_argument(
        "multi-chain PSRF needs at least two chains; rerun with more chains or use "
        "split mode");
  if (chain_count < 1) throw std::invalid_argument("no chains to diagnose");

  const Eigen::Index draws = samples.draws_per_chain();
  const Eigen::Index length = mode == PsrfMode::split ? draws / 2 : draws;
  const Eigen::Index width = mode == PsrfMode::split ? 2 * chain_count : chain_count;
  if (length < 2) throw std::invalid_argument("too few stored draws for PSRF");

  PsrfReport report;
  report.iteration = length;
  if (checkpoint_step > 0)
    for (Eigen::Index c = checkpoint_step; c < length; c += checkpoint_step)
      if (c >= 2) report.checkpoints.push_back(c);
  report.checkpoints.push_back(length);

  report.converged = true;
  for (Eigen::Index column : columns) {
    Eigen::MatrixXd matrix(length, width);
    for (Eigen::Index c = 0; c < chain_count; ++c) {
      const Eigen::VectorXd chain = samples.chains[c].values.col(column);
      if (mode == PsrfMode::split)
        matrix.middleCols(2 * c, 2) = split_chain(chain);
      else
        matrix.col(c) = chain;
    }
    TrackedPsrf tracked;
    tracked.column = column;
    tracked.name = samples.layout.column_name(column, samples.method);
    tracked.psrf = psrf(matrix);
    for (const auto& v : psrf_trace(matrix, report.checkpoints))
      tracked.trace.push_back(v.value);
    if (tracked.psrf.divergent || tracked.psrf.value > kPsrfCutoff) report.converged = false;
    report.max_psrf = std::max(report.max_psrf, tracked.psrf.value);
    report.parameters.push_back(std::move(tracked));
  }
  return report;
}

}  // namespace bqvc
