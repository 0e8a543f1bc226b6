#pragma once

#include <Eigen/Dense>

#include <vector>

#include "bqvc/dataset.hpp"

namespace bqvc {

// Clamped B-spline space on [0,1] with uniformly spaced interior knots.
// basis_count() == interior_knots() + degree() + 1.
class SplineConfig {
 public:
  SplineConfig(int degree, int interior_knots);

  int degree() const { return degree_; }
  int interior_knots() const { return interior_knots_; }
  int basis_count() const { return interior_knots_ + degree_ + 1; }

  friend bool operator==(const SplineConfig&, const SplineConfig&) = default;

 private:
  int degree_;
  int interior_knots_;
};

// Full knot vector: degree+1 zeros, interior knots i/(N+1), degree+1 ones.
std::vector<double> knot_sequence(const SplineConfig& config);

// Normalized B-spline values at v (Cox-de Boor). At v == 1 the left limit is
// used so the last basis function equals one. Throws for v outside [0,1].
Eigen::VectorXd evaluate_basis(double v, const SplineConfig& config);

// Row t holds evaluate_basis(points[t]).
Eigen::MatrixXd basis_matrix(const Eigen::VectorXd& points,
                             const SplineConfig& config);

// `points` equally spaced values from 0 to 1 inclusive.
Eigen::VectorXd uniform_grid(Eigen::Index points = 200);

// Spline-expanded design. Block j (j = 0..p) has rows Z_ij = pi(V_i) X_ij;
// block 0 is the varying intercept and equals the basis matrix.
class ExpandedDesign {
 public:
  ExpandedDesign(const Dataset& data, const SplineConfig& config);

  Eigen::Index n() const { return basis_.rows(); }
  Eigen::Index p() const { return blocks() - 1; }
  Eigen::Index d() const { return basis_.cols(); }
  Eigen::Index blocks() const { return z_.cols() / basis_.cols(); }

  const SplineConfig& spline() const { return config_; }
  const Eigen::MatrixXd& basis() const { return basis_; }
  // n x (p+1)d, blocks laid out contiguously.
  const Eigen::MatrixXd& matrix() const { return z_; }

  auto block(Eigen::Index j) const { return z_.middleCols(j * d(), d()); }

 private:
  SplineConfig config_;
  Eigen::MatrixXd basis_;
  Eigen::MatrixXd z_;
};

}  // namespace bqvc
