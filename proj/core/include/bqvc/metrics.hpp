#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace bqvc {

enum class FitClassification { correct, over, under };

const char* to_string(FitClassification label);  // "C", "O", "U"
FitClassification parse_fit_classification(const std::string& text);

// C: selected == truth; U: some true index missing; O: superset of truth.
FitClassification classify_fit(std::vector<int> selected, std::vector<int> truth);

double imse(const Eigen::VectorXd& estimate, const Eigen::VectorXd& truth);
double timse(const std::vector<double>& per_curve_imse);

// Fraction of grid points with lower <= truth <= upper.
double coverage(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                const Eigen::VectorXd& truth);

double pmse(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat);
double pmad(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat);

struct FitProportions {
  double correct = 0.0;
  double over = 0.0;
  double under = 0.0;
};

FitProportions fit_proportions(const std::vector<FitClassification>& labels);

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation; 0 for a single value
};

MeanSd mean_sd(const std::vector<double>& values);

// "0.21(0.06)"
std::string format_mean_sd(const MeanSd& value, int digits = 2);

}  // namespace bqvc
