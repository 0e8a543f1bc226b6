#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bqvc/inference.hpp"
#include "bqvc/metrics.hpp"
#include "bqvc/model.hpp"
#include "bqvc/posterior.hpp"
#include "bqvc/simulate.hpp"

namespace bqvc {

// Everything needed to regenerate one fit. Defaults follow the simulation
// settings: O = 2, N_n = 2, 10000 iterations with 5000 burn-in, 200 grid points.
struct RunConfig {
  Method method = Method::bqrvcss;
  double tau = 0.5;
  int degree = 2;
  int interior_knots = 2;
  PriorConfig priors;
  GaussianPriorConfig gaussian_priors;
  McmcOptions mcmc;
  int chains = 1;
  std::uint64_t seed = 1;
  int grid_points = 200;
  std::string data_path;
  std::string output_dir;

  SplineConfig spline() const { return {degree, interior_knots}; }
  ModelSpec model() const;
  void validate() const;
};

struct FitResult {
  RunConfig config;
  PosteriorSamples samples;
  std::string selection_rule;       // "median_probability_model" or "credible_interval"
  std::vector<int> selected;
  Eigen::VectorXd inclusion_probs;  // empty for samplers without a spike
  Eigen::VectorXd grid;
  std::vector<CurveEstimate> curves;  // j = 0..p
  std::vector<ScalarSummary> scalars;
  double seconds = 0.0;
};

// Validates config and data, runs the chains, and summarizes.
FitResult fit_dataset(const Dataset& data, const RunConfig& config);
// Selection, curves and scalars from existing samples.
FitResult summarize_samples(PosteriorSamples samples, const RunConfig& config);

struct Evaluation {
  FitClassification label = FitClassification::under;
  std::vector<int> selected;
  std::vector<int> support;
  std::vector<double> imse;      // j = 0..p
  std::vector<double> coverage;  // j = 0..p
  double timse = 0.0;
};

Evaluation evaluate_fit(const std::vector<CurveEstimate>& curves,
                        const std::vector<int>& selected, const TrueCurves& truth);

struct StudyConfig {
  std::vector<ScenarioSpec> scenarios;
  std::vector<Method> methods{Method::bqrvcss};
  int replicates = 10;
  std::uint64_t seed_base = 1;
  RunConfig fit;  // method, tau and seed are overridden per cell
  std::string output_dir;  // empty: keep everything in memory
};

// Directory-safe scenario label, e.g. gene_iid_normal_tau0.5.
std::string scenario_tag(const ScenarioSpec& spec);

struct ReplicateRecord {
  std::string scenario;
  Method method = Method::bqrvcss;
  int replicate = 0;
  std::uint64_t seed = 0;  // data and chain seed
  Evaluation evaluation;
  double seconds = 0.0;
  bool resumed = false;
};

struct AggregateRecord {
  std::string scenario;
  Method method = Method::bqrvcss;
  int replicates = 0;
  FitProportions proportions;
  MeanSd timse;
  std::vector<double> mean_coverage;  // j = 0..3
};

struct StudyResult {
  std::vector<ReplicateRecord> fits;
  std::vector<AggregateRecord> aggregates;
};

using StudyProgress = std::function<void(const ReplicateRecord&)>;

// Replicate r of every cell uses seed seed_base + r for both the data and the
// chains. With an output directory, each finished replicate writes a manifest
// and a rerun skips replicates whose manifest already exists; fits.csv and
// aggregate.csv are written at the end.
StudyResult run_study(const StudyConfig& config, const StudyProgress& progress = {});

std::vector<AggregateRecord> aggregate(const std::vector<ReplicateRecord>& fits);

}  // namespace bqvc
