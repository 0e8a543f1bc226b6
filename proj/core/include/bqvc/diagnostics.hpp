#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "bqvc/posterior.hpp"

namespace bqvc {

inline constexpr double kPsrfCutoff = 1.1;

struct PsrfValue {
  double value = 1.0;
  bool degenerate = false;  // W == 0; value is reported as 1
  bool divergent = false;   // W == 0 but chains disagree (B > 0)
};

// Gelman-Rubin PSRF for one parameter. `chains` is n_iter x m, one column per
// chain. Requires m >= 2 and n_iter >= 2.
PsrfValue psrf(const Eigen::MatrixXd& chains);

// PSRF on the prefixes ending at each checkpoint (a prefix length).
std::vector<PsrfValue> psrf_trace(const Eigen::MatrixXd& chains,
                                  const std::vector<Eigen::Index>& checkpoints);

// One chain halved into two: first half and second half as columns.
Eigen::MatrixXd split_chain(const Eigen::VectorXd& chain);

struct TrackedPsrf {
  Eigen::Index column = 0;
  std::string name;
  PsrfValue psrf;
  std::vector<double> trace;  // one value per checkpoint
};

struct PsrfReport {
  Eigen::Index iteration = 0;  // stored draws per (possibly split) chain
  std::vector<Eigen::Index> checkpoints;
  std::vector<TrackedPsrf> parameters;
  bool converged = false;  // every tracked value <= cutoff and none divergent
  double max_psrf = 0.0;
};

enum class PsrfMode { multi_chain, split };

// Default tracked set: every spline coefficient of the blocks in `blocks`
// (usually the interim selection) plus the likelihood scale.
std::vector<Eigen::Index> default_tracked_columns(const PosteriorSamples& samples,
                                                  const std::vector<int>& blocks);

// Throws std::invalid_argument when multi_chain is requested with fewer than
// two chains.
PsrfReport psrf_report(const PosteriorSamples& samples,
                       const std::vector<Eigen::Index>& columns, PsrfMode mode,
                       Eigen::Index checkpoint_step = 0);

}  // namespace bqvc
