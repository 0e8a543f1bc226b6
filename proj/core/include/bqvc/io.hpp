#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "bqvc/dataset.hpp"
#include "bqvc/inference.hpp"
#include "bqvc/posterior.hpp"
#include "bqvc/simulate.hpp"
#include "bqvc/study.hpp"

namespace bqvc {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace fs = std::filesystem;

// Header V, E_1..E_q, X_1..X_p, Y; values written with 17 significant digits.
void write_dataset_csv(const fs::path& path, const Dataset& data);
Dataset read_dataset_csv(const fs::path& path);

std::string run_config_to_json(const RunConfig& config);
// Missing fields keep their defaults; unknown fields are rejected.
RunConfig run_config_from_json(const std::string& text);
void write_run_config(const fs::path& path, const RunConfig& config);
RunConfig read_run_config(const fs::path& path);

std::string scenario_to_json(const ScenarioSpec& spec);
ScenarioSpec scenario_from_json(const std::string& text);

struct TruthFile {
  ScenarioSpec spec;
  TrueCurves truth;
  std::vector<int> support;
};

// Scenario echo, support and the true curves on the evaluation grid.
void write_truth(const fs::path& path, const SimulatedData& sim, int grid_points = 200);
TruthFile read_truth(const fs::path& path);

// Columnar binary (per chain, column-major doubles) plus a JSON sidecar at
// path.replace_extension(".json"). Neither file records wall-clock data, so
// equal inputs give byte-identical files.
void write_samples(const fs::path& path, const PosteriorSamples& samples,
                   const RunConfig& config);
PosteriorSamples read_samples(const fs::path& path);
fs::path samples_sidecar(const fs::path& path);

// Long format: j, v, median, lower, upper.
void write_curves_csv(const fs::path& path, const std::vector<CurveEstimate>& curves);
std::vector<CurveEstimate> read_curves_csv(const fs::path& path);

struct FitSummary {
  RunConfig config;
  std::string selection_rule;
  std::vector<int> selected;
  Eigen::VectorXd inclusion_probs;
  std::string samples_file;
  std::string curves_file;
};

void write_fit_summary(const fs::path& path, const FitResult& fit,
                       const std::string& samples_file, const std::string& curves_file);
FitSummary read_fit_summary(const fs::path& path);

std::string evaluation_to_json(const Evaluation& evaluation, const RunConfig& config);
void write_evaluation(const fs::path& path, const Evaluation& evaluation,
                      const RunConfig& config);

std::string replicate_to_json(const ReplicateRecord& record, const RunConfig& config);
ReplicateRecord replicate_from_json(const std::string& text);

void write_fits_csv(const fs::path& path, const std::vector<ReplicateRecord>& fits);
void write_aggregate_csv(const fs::path& path,
                         const std::vector<AggregateRecord>& aggregates);

std::string read_text(const fs::path& path);
// Writes via a temporary file and rename, creating parent directories.
void write_text(const fs::path& path, const std::string& text);

}  // namespace bqvc
