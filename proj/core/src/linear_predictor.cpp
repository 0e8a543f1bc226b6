#include "bqvc/linear_predictor.hpp"

namespace bqvc {

LinearPredictor::LinearPredictor(const ExpandedDesign& design, const Dataset& data)
    : design_(&design), data_(&data), value_(Eigen::VectorXd::Zero(data.n())) {}

void LinearPredictor::recompute(const std::vector<Eigen::VectorXd>& alpha,
                                const Eigen::VectorXd& beta) {
  value_.setZero();
  if (beta.size() > 0) value_.noalias() += data_->e * beta;
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(alpha.size()); ++j) {
    if (alpha[j].isZero(0.0)) continue;
    value_.noalias() += design_->block(j) * alpha[j];
  }
}

Eigen::VectorXd LinearPredictor::partial_residual(Eigen::Index block,
                                                  const Eigen::VectorXd& current) const {
  Eigen::VectorXd r = data_->y - value_;
  if (block == kBetaBlock) {
    if (current.size() > 0) r.noalias() += data_->e * current;
  } else if (!current.isZero(0.0)) {
    r.noalias() += design_->block(block) * current;
  }
  return r;
}

double LinearPredictor::partial_residual(Eigen::Index i, Eigen::Index block,
                                         const Eigen::VectorXd& current) const {
  double r = data_->y[i] - value_[i];
  if (block == kBetaBlock) {
    if (current.size() > 0) r += data_->e.row(i).dot(current);
  } else {
    r += design_->block(block).row(i).dot(current);
  }
  return r;
}

void LinearPredictor::replace(Eigen::Index block, const Eigen::VectorXd& old_value,
                              const Eigen::VectorXd& new_value) {
  const Eigen::VectorXd delta = new_value - old_value;
  if (delta.isZero(0.0)) return;
  if (block == kBetaBlock)
    value_.noalias() += data_->e * delta;
  else
    value_.noalias() += design_->block(block) * delta;
}

Eigen::VectorXd LinearPredictor::residual() const { return data_->y - value_; }

}  // namespace bqvc
