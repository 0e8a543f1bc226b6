#include "bqvc/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bqvc {

void Dataset::validate() const {
  const Eigen::Index rows = y.size();
  if (rows == 0) throw std::invalid_argument("dataset has no observations");
  if (v.size() != rows)
    throw std::invalid_argument("index variable length " +
                                std::to_string(v.size()) +
                                " does not match response length " +
                                std::to_string(rows));
  if (x.rows() != rows && x.cols() > 0)
    throw std::invalid_argument("predictor matrix has " +
                                std::to_string(x.rows()) + " rows, expected " +
                                std::to_string(rows));
  if (e.rows() != rows && e.cols() > 0)
    throw std::invalid_argument("clinical covariate matrix has " +
                                std::to_string(e.rows()) + " rows, expected " +
                                std::to_string(rows));
  if (!y.allFinite() || !x.allFinite() || !e.allFinite())
    throw std::invalid_argument("dataset contains non-finite values");
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!(v[i] >= 0.0 && v[i] <= 1.0))
      throw std::invalid_argument("index variable V_" + std::to_string(i) +
                                  " outside [0,1]");
  }
}

SplineConfig::SplineConfig(int degree, int interior_knots)
    : degree_(degree), interior_knots_(interior_knots) {
  if (degree < 0) throw std::invalid_argument("spline degree must be >= 0");
  if (interior_knots < 0)
    throw std::invalid_argument("number of interior knots must be >= 0");
}

std::vector<double> knot_sequence(const SplineConfig& config) {
  const int order = config.degree() + 1;
  const int interior = config.interior_knots();
  std::vector<double> knots;
  knots.reserve(static_cast<std::size_t>(2 * order + interior));
  knots.insert(knots.end(), order, 0.0);
  for (int i = 1; i <= interior; ++i)
    knots.push_back(static_cast<double>(i) / (interior + 1));
  knots.insert(knots.end(), order, 1.0);
  return knots;
}

namespace {

// Nonzero basis values on the span containing v, written into `out`
// (length d). Implements the triangular Cox-de Boor scheme.
void fill_basis(double v, const SplineConfig& config,
                const std::vector<double>& knots, double* out) {
  const int degree = config.degree();
  const int d = config.basis_count();
  std::fill(out, out + d, 0.0);

  // Span index k with knots[k] <= v < knots[k+1]; v == 1 uses the last
  // nonempty span (left limit).
  int span = d - 1;
  if (v < 1.0) {
    auto it = std::upper_bound(knots.begin() + degree,
                               knots.begin() + d + 1, v);
    span = static_cast<int>(it - knots.begin()) - 1;
  }

  std::vector<double> left(degree + 1), right(degree + 1), values(degree + 1);
  values[0] = 1.0;
  for (int r = 1; r <= degree; ++r) {
    left[r] = v - knots[span + 1 - r];
    right[r] = knots[span + r] - v;
    double saved = 0.0;
    for (int s = 0; s < r; ++s) {
      const double denom = right[s + 1] + left[r - s];
      const double temp = denom > 0.0 ? values[s] / denom : 0.0;
      values[s] = saved + right[s + 1] * temp;
      saved = left[r - s] * temp;
    }
    values[r] = saved;
  }
  for (int s = 0; s <= degree; ++s) out[span - degree + s] = values[s];
}

}  // namespace

Eigen::VectorXd evaluate_basis(double v, const SplineConfig& config) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::invalid_argument("basis evaluation point outside [0,1]");
  const auto knots = knot_sequence(config);
  Eigen::VectorXd out(config.basis_count());
  fill_basis(v, config, knots, out.data());
  return out;
}

Eigen::MatrixXd basis_matrix(const Eigen::VectorXd& points,
                             const SplineConfig& config) {
  const auto knots = knot_sequence(config);
  const int d = config.basis_count();
  Eigen::MatrixXd out(points.size(), d);
  Eigen::VectorXd row(d);
  for (Eigen::Index t = 0; t < points.size(); ++t) {
    const double v = points[t];
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("basis evaluation point outside [0,1]");
    fill_basis(v, config, knots, row.data());
    out.row(t) = row.transpose();
  }
  return out;
}

Eigen::VectorXd uniform_grid(Eigen::Index points) {
  if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
  return Eigen::VectorXd::LinSpaced(points, 0.0, 1.0);
}

ExpandedDesign::ExpandedDesign(const Dataset& data, const SplineConfig& config)
    : config_(config) {
  if (data.v.size() != data.y.size() ||
      (data.x.cols() > 0 && data.x.rows() != data.v.size()))
    throw std::invalid_argument(
        "dimension mismatch between predictors and index variable");
  basis_ = basis_matrix(data.v, config);
  const Eigen::Index n = basis_.rows();
  const Eigen::Index d = basis_.cols();
  const Eigen::Index p = data.x.cols();
  z_.resize(n, (p + 1) * d);
  z_.leftCols(d) = basis_;
  for (Eigen::Index j = 1; j <= p; ++j)
    z_.middleCols(j * d, d) = basis_.array().colwise() * data.x.col(j - 1).array();
}

}  // namespace bqvc
