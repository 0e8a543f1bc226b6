#include "bqvc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <iomanip>
#include <stdexcept>

namespace bqvc {

namespace {

void check_same_size(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": length mismatch");
  if (a == 0) throw std::invalid_argument(std::string(what) + ": empty input");
}

}  // namespace

const char* to_string(FitClassification label) {
  switch (label) {
    case FitClassification::correct: return "C";
    case FitClassification::over: return "O";
    case FitClassification::under: return "U";
  }
  return "?";
}

FitClassification parse_fit_classification(const std::string& text) {
  if (text == "C") return FitClassification::correct;
  if (text == "O") return FitClassification::over;
  if (text == "U") return FitClassification::under;
  throw std::invalid_argument("unknown fit label '" + text + "'");
}

FitClassification classify_fit(std::vector<int> selected, std::vector<int> truth) {
  std::sort(selected.begin(), selected.end());
  selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
  std::sort(truth.begin(), truth.end());
  truth.erase(std::unique(truth.begin(), truth.end()), truth.end());
  if (!std::includes(selected.begin(), selected.end(), truth.begin(), truth.end()))
    return FitClassification::under;
  return selected.size() == truth.size() ? FitClassification::correct
                                         : FitClassification::over;
}

double imse(const Eigen::VectorXd& estimate, const Eigen::VectorXd& truth) {
  check_same_size(estimate.size(), truth.size(), "imse");
  return (estimate - truth).squaredNorm() / static_cast<double>(truth.size());
}

double timse(const std::vector<double>& per_curve_imse) {
  return std::accumulate(per_curve_imse.begin(), per_curve_imse.end(), 0.0);
}

double coverage(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                const Eigen::VectorXd& truth) {
  check_same_size(lower.size(), truth.size(), "coverage");
  check_same_size(upper.size(), truth.size(), "coverage");
  Eigen::Index hits = 0;
  for (Eigen::Index t = 0; t < truth.size(); ++t)
    if (lower[t] <= truth[t] && truth[t] <= upper[t]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double pmse(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat) {
  check_same_size(y.size(), yhat.size(), "pmse");
  return (y - yhat).squaredNorm() / static_cast<double>(y.size());
}

double pmad(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat) {
  check_same_size(y.size(), yhat.size(), "pmad");
  return (y - yhat).cwiseAbs().sum() / static_cast<double>(y.size());
}

FitProportions fit_proportions(const std::vector<FitClassification>& labels) {
  if (labels.empty()) throw std::invalid_argument("no fit labels to summarize");
  FitProportions out;
  for (auto label : labels) {
    if (label == FitClassification::correct) out.correct += 1.0;
    else if (label == FitClassification::over) out.over += 1.0;
    else out.under += 1.0;
  }
  const double total = static_cast<double>(labels.size());
  out.correct /= total;
  out.over /= total;
  out.under /= total;
  return out;
}

MeanSd mean_sd(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("no values to summarize");
  MeanSd out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double x : values) ss += (x - out.mean) * (x - out.mean);
    out.sd = std::sqrt(ss / (n - 1.0));
  }
  return out;
}

std::string format_mean_sd(const MeanSd& value, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << value.mean << '(' << value.sd << ')';
  return os.str();
}

}  // namespace bqvc
