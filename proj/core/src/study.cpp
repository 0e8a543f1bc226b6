#include "bqvc/study.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "bqvc/io.hpp"

namespace bqvc {

ModelSpec RunConfig::model() const {
  ModelSpec spec;
  spec.method = method;
  spec.tau = tau;
  spec.priors = priors;
  spec.gaussian_priors = gaussian_priors;
  return spec;
}

void RunConfig::validate() const {
  QuantileLevel{tau};
  if (degree < 0 || interior_knots < 0)
    throw std::invalid_argument("spline degree and interior knots must be non-negative");
  if (is_quantile(method)) priors.validate();
  else gaussian_priors.validate();
  mcmc.validate();
  if (chains < 1) throw std::invalid_argument("at least one chain is required");
  if (grid_points < 2) throw std::invalid_argument("grid needs at least two points");
}

FitResult summarize_samples(PosteriorSamples samples, const RunConfig& config) {
  FitResult out;
  out.config = config;
  if (uses_spike_slab(samples.method)) {
    auto inclusion = inclusion_probabilities(samples);
    out.selection_rule = "median_probability_model";
    out.selected = std::move(inclusion.selected);
    out.inclusion_probs = std::move(inclusion.probs);
  } else {
    out.selection_rule = "credible_interval";
    out.selected = ci_selection(samples);
  }
  out.grid = uniform_grid(config.grid_points);
  const Eigen::MatrixXd grid_basis = basis_matrix(out.grid, samples.spline);
  for (Eigen::Index j = 0; j <= samples.layout.p; ++j)
    out.curves.push_back(curve_estimate(samples, grid_basis, out.grid, j));
  out.scalars = posterior_scalar_summaries(samples);
  out.samples = std::move(samples);
  return out;
}

FitResult fit_dataset(const Dataset& data, const RunConfig& config) {
  config.validate();
  data.validate();
  const auto start = std::chrono::steady_clock::now();
  PosteriorSamples samples =
      run_chains(data, config.spline(), config.model(), config.mcmc, config.seed, config.chains);
  FitResult out = summarize_samples(std::move(samples), config);
  out.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

Evaluation evaluate_fit(const std::vector<CurveEstimate>& curves,
                        const std::vector<int>& selected, const TrueCurves& truth) {
  if (static_cast<Eigen::Index>(curves.size()) != truth.p + 1)
    throw std::invalid_argument("expected " + std::to_string(truth.p + 1) +
                                " estimated curves, got " + std::to_string(curves.size()));
  Evaluation out;
  out.selected = selected;
  out.support = truth.support();
  out.label = classify_fit(selected, out.support);
  for (Eigen::Index j = 0; j <= truth.p; ++j) {
    const auto& c = curves[static_cast<std::size_t>(j)];
    const Eigen::VectorXd target = truth.on_grid(j, c.grid);
    out.imse.push_back(imse(c.median, target));
    out.coverage.push_back(coverage(c.lower, c.upper, target));
  }
  out.timse = timse(out.imse);
  return out;
}

std::string scenario_tag(const ScenarioSpec& spec) {
  char tau[32];
  std::snprintf(tau, sizeof tau, "%g", spec.tau);
  std::string tag = std::string(to_string(spec.covariate_kind)) + "_" +
                    (spec.heteroscedastic ? "het" : "iid") + "_" + to_string(spec.error_kind) +
                    "_tau" + tau;
  if (spec.hard_mode) tag += "_hard";
  if (spec.error_kind == ErrorKind::normal_mixture && spec.mixture_scale == MixtureScale::sd)
    tag += "_sd";
  if (spec.n != 200 || spec.p != 100)
    tag += "_n" + std::to_string(spec.n) + "_p" + std::to_string(spec.p);
  return tag;
}

std::vector<AggregateRecord> aggregate(const std::vector<ReplicateRecord>& fits) {
  std::vector<std::pair<std::string, Method>> order;
  std::map<std::pair<std::string, Method>, std::vector<const ReplicateRecord*>> groups;
  for (const auto& r : fits) {
    const auto key = std::make_pair(r.scenario, r.method);
    if (!groups.contains(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  std::vector<AggregateRecord> out;
  for (const auto& key : order) {
    const auto& members = groups[key];
    AggregateRecord a;
    a.scenario = key.first;
    a.method = key.second;
    a.replicates = static_cast<int>(members.size());
    std::vector<FitClassification> labels;
    std::vector<double> timses;
    a.mean_coverage.assign(4, 0.0);
    for (const auto* r : members) {
      labels.push_back(r->evaluation.label);
      timses.push_back(r->evaluation.timse);
      for (std::size_t j = 0; j < 4 && j < r->evaluation.coverage.size(); ++j)
        a.mean_coverage[j] += r->evaluation.coverage[j] / static_cast<double>(members.size());
    }
    a.proportions = fit_proportions(labels);
    a.timse = mean_sd(timses);
    out.push_back(std::move(a));
  }
  return out;
}

StudyResult run_study(const StudyConfig& config, const StudyProgress& progress) {
  if (config.replicates < 1) throw std::invalid_argument("replicates must be positive");
  if (config.scenarios.empty() || config.methods.empty())
    throw std::invalid_argument("study needs at least one scenario and one method");
  const bool persist = !config.output_dir.empty();
  const fs::path root(config.output_dir);

  StudyResult result;
  for (const auto& base : config.scenarios) {
    base.validate();
    const std::string tag = scenario_tag(base);
    for (Method method : config.methods) {
      for (int r = 0; r < config.replicates; ++r) {
        const std::uint64_t seed = config.seed_base + static_cast<std::uint64_t>(r);
        RunConfig run = config.fit;
        run.method = method;
        run.tau = base.tau;
        run.seed = seed;
        const fs::path manifest = root / "manifests" / tag / std::string(to_string(method)) /
                                  ("rep_" + std::to_string(r) + ".json");
        ReplicateRecord record;
        if (persist && fs::exists(manifest)) {
          record = replicate_from_json(read_text(manifest));
          record.resumed = true;
        } else {
          ScenarioSpec spec = base;
          spec.seed = seed;
          const SimulatedData sim = simulate_dataset(spec);
          const FitResult fit = fit_dataset(sim.data, run);
          record.scenario = tag;
          record.method = method;
          record.replicate = r;
          record.seed = seed;
          record.seconds = fit.seconds;
          record.evaluation = evaluate_fit(fit.curves, fit.selected, sim.truth);
          if (persist) write_text(manifest, replicate_to_json(record, run) + "\n");
        }
        if (progress) progress(record);
        result.fits.push_back(std::move(record));
      }
    }
  }
  result.aggregates = aggregate(result.fits);
  if (persist) {
    write_fits_csv(root / "fits.csv", result.fits);
    write_aggregate_csv(root / "aggregate.csv", result.aggregates);
  }
  return result;
}

}  // namespace bqvc
