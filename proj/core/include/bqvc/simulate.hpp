#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "bqvc/dataset.hpp"
#include "bqvc/random.hpp"

namespace bqvc {

enum class CovariateKind { gene, snp };
enum class ErrorKind { normal, normal_mixture, laplace, lognormal, t2 };
// How the "3" of the 0.8 N(0,1) + 0.2 N(0,3) mixture is read.
enum class MixtureScale { variance, sd };

const char* to_string(CovariateKind kind);
const char* to_string(ErrorKind kind);
const char* to_string(MixtureScale scale);
CovariateKind parse_covariate_kind(const std::string& text);
ErrorKind parse_error_kind(const std::string& text);
MixtureScale parse_mixture_scale(const std::string& text);

struct ScenarioSpec {
  Eigen::Index n = 200;
  Eigen::Index p = 100;
  CovariateKind covariate_kind = CovariateKind::gene;
  ErrorKind error_kind = ErrorKind::normal;
  bool heteroscedastic = false;
  double tau = 0.5;
  std::uint64_t seed = 1;
  bool hard_mode = false;  // gamma_0(v) = 2 + 2 sin(6 pi v)
  MixtureScale mixture_scale = MixtureScale::variance;

  void validate() const;
  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

// gamma_0(v) = 2 + 2 sin(2 pi v), gamma_1(v) = 2 exp(2v - 1),
// gamma_2(v) = -6 v (1 - v), gamma_3(v) = -4 v^3, zero for j > 3.
double true_gamma(Eigen::Index j, double v, bool hard_mode = false);

struct TrueCurves {
  Eigen::Index p = 0;
  bool hard_mode = false;

  double operator()(Eigen::Index j, double v) const { return true_gamma(j, v, hard_mode); }
  Eigen::VectorXd on_grid(Eigen::Index j, const Eigen::VectorXd& grid) const;
  std::vector<int> support() const;  // {1,2,3} intersected with 1..p
};

// Rows i.i.d. N(0, S) with S_jk = 0.5^|j-k|.
Eigen::MatrixXd generate_gene_covariates(Rng& rng, Eigen::Index n, Eigen::Index p);

// Per column: < Q1 -> 0, Q1..Q3 -> 1, > Q3 -> 2, with type-7 quartiles.
Eigen::MatrixXd dichotomize_snp(const Eigen::MatrixXd& gene);

// tau-quantile of the uncentered base law.
double base_error_quantile(ErrorKind kind, double tau,
                           MixtureScale scale = MixtureScale::variance);
double base_error_cdf(ErrorKind kind, double x, MixtureScale scale = MixtureScale::variance);
double base_error_density(ErrorKind kind, double x,
                          MixtureScale scale = MixtureScale::variance);
double sample_base_error(Rng& rng, ErrorKind kind,
                         MixtureScale scale = MixtureScale::variance);

// Draws from the base law shifted so that its tau-quantile is zero.
Eigen::VectorXd centered_error_sample(Rng& rng, ErrorKind kind, double tau, Eigen::Index n,
                                      MixtureScale scale = MixtureScale::variance);

// Y_i = gamma_0(V_i) + sum_j gamma_j(V_i) X_ij + e_i, with e_i multiplied by
// (1 + X_i2) when heteroscedastic.
Eigen::VectorXd generate_response(const Eigen::MatrixXd& x, const Eigen::VectorXd& v,
                                  const TrueCurves& curves, const Eigen::VectorXd& errors,
                                  bool heteroscedastic);

struct SimulatedData {
  ScenarioSpec spec;
  Dataset data;
  TrueCurves truth;
  std::vector<int> support;
};

SimulatedData simulate_dataset(const ScenarioSpec& spec);

}  // namespace bqvc
