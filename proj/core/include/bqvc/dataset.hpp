#pragma once

#include <Eigen/Dense>

namespace bqvc {

// One regression sample set. The intercept column X_{i0} = 1 is implicit:
// `x` holds only the p predictors subject to selection, and `e` holds the
// q clinical covariates that enter linearly (q may be zero).
struct Dataset {
  Eigen::VectorXd v;  // index variable, each entry in [0,1]
  Eigen::MatrixXd x;  // n x p
  Eigen::MatrixXd e;  // n x q
  Eigen::VectorXd y;  // n

  Eigen::Index n() const { return y.size(); }
  Eigen::Index p() const { return x.cols(); }
  Eigen::Index q() const { return e.cols(); }

  // Throws std::invalid_argument on inconsistent shapes, non-finite values,
  // or index values outside [0,1].
  void validate() const;
};

}  // namespace bqvc
