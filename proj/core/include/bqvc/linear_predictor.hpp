#pragma once

#include <Eigen/Dense>

#include <vector>

#include "bqvc/basis.hpp"
#include "bqvc/dataset.hpp"

namespace bqvc {

// Block index that selects the clinical coefficients beta.
inline constexpr Eigen::Index kBetaBlock = -1;

// Running value of E beta + sum_j Z_j alpha_j shared by every sampler. The
// design and data are referenced, not copied, and must outlive this object.
class LinearPredictor {
 public:
  LinearPredictor(const ExpandedDesign& design, const Dataset& data);

  const ExpandedDesign& design() const { return *design_; }
  const Dataset& data() const { return *data_; }
  const Eigen::VectorXd& value() const { return value_; }

  void recompute(const std::vector<Eigen::VectorXd>& alpha,
                 const Eigen::VectorXd& beta);

  // Y - linear predictor + contribution of `block` (alpha block index or
  // kBetaBlock), i.e. the residual with that block left out.
  Eigen::VectorXd partial_residual(Eigen::Index block,
                                   const Eigen::VectorXd& current) const;
  double partial_residual(Eigen::Index i, Eigen::Index block,
                          const Eigen::VectorXd& current) const;

  void replace(Eigen::Index block, const Eigen::VectorXd& old_value,
               const Eigen::VectorXd& new_value);

  // Y - linear predictor.
  Eigen::VectorXd residual() const;

 private:
  const ExpandedDesign* design_;
  const Dataset* data_;
  Eigen::VectorXd value_;
};

}  // namespace bqvc
