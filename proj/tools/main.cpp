// bqvc: simulate, fit, evaluate, diagnose and replicate-study driver.

#include <CLI11.hpp>
#include <json.hpp>

#include <bqvc/diagnostics.hpp>
#include <bqvc/io.hpp>
#include <bqvc/study.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kOutputEnv = "BQVC_OUTPUT_DIR";

std::string default_output_dir() {
  const char* env = std::getenv(kOutputEnv);
  return env && *env ? env : "bqvc_out";
}

struct SimulateArgs {
  bqvc::ScenarioSpec spec;
  std::string covariates = "gene";
  std::string error = "normal";
  std::string mixture = "variance";
  std::string out;
};

// Flags that override fields of a RunConfig loaded from --config.
struct FitFlags {
  std::string config_file;
  std::optional<std::string> data, method, out;
  std::optional<double> tau;
  std::optional<int> degree, knots, iterations, burn_in, thin, chains, grid;
  std::optional<std::uint64_t> seed;
  std::optional<double> pi0_a, pi0_b;
};

void add_fit_flags(CLI::App* cmd, FitFlags& f) {
  cmd->add_option("--config", f.config_file, "RunConfig JSON; flags override its fields");
  cmd->add_option("--method", f.method, "bqrvcss | bqrvc | bvcss | bvc");
  cmd->add_option("--tau", f.tau, "quantile level");
  cmd->add_option("--degree", f.degree, "spline degree O");
  cmd->add_option("--knots", f.knots, "interior knots N_n");
  cmd->add_option("--iterations", f.iterations, "MCMC iterations");
  cmd->add_option("--burn-in", f.burn_in, "burn-in iterations");
  cmd->add_option("--thin", f.thin, "thinning interval");
  cmd->add_option("--chains", f.chains, "independent chains");
  cmd->add_option("--seed", f.seed, "chain seed");
  cmd->add_option("--grid", f.grid, "curve grid points");
  cmd->add_option("--pi0-a", f.pi0_a, "Beta prior on pi0, first parameter");
  cmd->add_option("--pi0-b", f.pi0_b, "Beta prior on pi0, second parameter");
}

bqvc::RunConfig resolve_config(const FitFlags& f) {
  bqvc::RunConfig c;
  if (!f.config_file.empty()) c = bqvc::read_run_config(f.config_file);
  if (f.data) c.data_path = *f.data;
  if (f.out) c.output_dir = *f.out;
  if (f.method) c.method = bqvc::parse_method(*f.method);
  if (f.tau) c.tau = *f.tau;
  if (f.degree) c.degree = *f.degree;
  if (f.knots) c.interior_knots = *f.knots;
  if (f.iterations) c.mcmc.iterations = *f.iterations;
  if (f.burn_in) c.mcmc.burn_in = *f.burn_in;
  if (f.thin) c.mcmc.thin = *f.thin;
  if (f.chains) c.chains = *f.chains;
  if (f.seed) c.seed = *f.seed;
  if (f.grid) c.grid_points = *f.grid;
  if (f.pi0_a) c.priors.e = c.gaussian_priors.a = *f.pi0_a;
  if (f.pi0_b) c.priors.f = c.gaussian_priors.b = *f.pi0_b;
  if (c.output_dir.empty()) c.output_dir = default_output_dir();
  return c;
}

int cmd_simulate(SimulateArgs& a) {
  a.spec.covariate_kind = bqvc::parse_covariate_kind(a.covariates);
  a.spec.error_kind = bqvc::parse_error_kind(a.error);
  a.spec.mixture_scale = bqvc::parse_mixture_scale(a.mixture);
  const fs::path out = a.out.empty() ? fs::path(default_output_dir()) : fs::path(a.out);
  const auto sim = bqvc::simulate_dataset(a.spec);
  bqvc::write_dataset_csv(out / "data.csv", sim.data);
  bqvc::write_truth(out / "truth.json", sim);
  bqvc::write_text(out / "scenario.json", bqvc::scenario_to_json(a.spec) + "\n");
  std::cout << "wrote " << (out / "data.csv").string() << " (n=" << sim.data.n()
            << ", p=" << sim.data.p() << ")\n";
  return 0;
}

int cmd_fit(const FitFlags& flags) {
  bqvc::RunConfig config = resolve_config(flags);
  if (config.data_path.empty()) throw std::invalid_argument("fit needs --data or io.data");
  config.validate();
  const bqvc::Dataset data = bqvc::read_dataset_csv(config.data_path);
  const fs::path out(config.output_dir);
  const auto fit = bqvc::fit_dataset(data, config);
  bqvc::write_samples(out / "samples.bin", fit.samples, config);
  bqvc::write_curves_csv(out / "curves.csv", fit.curves);
  bqvc::write_fit_summary(out / "summary.json", fit, "samples.bin", "curves.csv");
  std::cout << bqvc::to_string(config.method) << ": selected {";
  for (std::size_t i = 0; i < fit.selected.size(); ++i)
    std::cout << (i ? "," : "") << fit.selected[i];
  std::cout << "} by " << fit.selection_rule << " in " << fit.seconds << " s\n"
            << "wrote " << (out / "summary.json").string() << "\n";
  return 0;
}

fs::path summary_path(const std::string& arg) {
  fs::path p(arg);
  return fs::is_directory(p) ? p / "summary.json" : p;
}

int cmd_evaluate(const std::vector<std::string>& fits, const std::vector<std::string>& truths,
                 const std::string& out) {
  if (fits.empty()) throw std::invalid_argument("evaluate needs at least one --fit");
  if (truths.size() != fits.size())
    throw std::invalid_argument("give one --truth per --fit");
  std::vector<bqvc::ReplicateRecord> records;
  for (std::size_t k = 0; k < fits.size(); ++k) {
    const fs::path summary_file = summary_path(fits[k]);
    const auto summary = bqvc::read_fit_summary(summary_file);
    const auto truth = bqvc::read_truth(truths[k]);
    const auto curves =
        bqvc::read_curves_csv(summary_file.parent_path() / summary.curves_file);
    const auto evaluation = bqvc::evaluate_fit(curves, summary.selected, truth.truth);
    const fs::path metrics_file = summary_file.parent_path() / "metrics.json";
    bqvc::write_evaluation(metrics_file, evaluation, summary.config);
    std::cout << metrics_file.string() << ": " << bqvc::to_string(evaluation.label)
              << " TIMSE " << evaluation.timse << "\n";
    bqvc::ReplicateRecord r;
    r.scenario = bqvc::scenario_tag(truth.spec);
    r.method = summary.config.method;
    r.replicate = static_cast<int>(k);
    r.seed = summary.config.seed;
    r.evaluation = evaluation;
    records.push_back(std::move(r));
  }
  if (records.size() > 1) {
    const auto aggregates = bqvc::aggregate(records);
    const fs::path dir = out.empty() ? fs::path(default_output_dir()) : fs::path(out);
    bqvc::write_fits_csv(dir / "fits.csv", records);
    bqvc::write_aggregate_csv(dir / "aggregate.csv", aggregates);
    for (const auto& a : aggregates)
      std::cout << a.scenario << " " << bqvc::to_string(a.method) << ": C=" << a.proportions.correct
                << " O=" << a.proportions.over << " U=" << a.proportions.under
                << " TIMSE " << bqvc::format_mean_sd(a.timse) << "\n";
  }
  return 0;
}

int cmd_diagnose(const std::string& fit, bool split, bool all, int step, const std::string& out) {
  const fs::path summary_file = summary_path(fit);
  const auto summary = bqvc::read_fit_summary(summary_file);
  const auto samples = bqvc::read_samples(summary_file.parent_path() / summary.samples_file);
  if (!split && samples.chains.size() < 2)
    throw std::invalid_argument(
        "multi-chain PSRF needs at least two chains; refit with --chains 2 or pass --split");
  std::vector<int> blocks = summary.selected;
  if (all) {
    blocks.clear();
    for (int j = 0; j <= samples.layout.p; ++j) blocks.push_back(j);
  }
  const auto columns = bqvc::default_tracked_columns(samples, blocks);
  const auto report = bqvc::psrf_report(
      samples, columns, split ? bqvc::PsrfMode::split : bqvc::PsrfMode::multi_chain, step);

  json j;
  j["config"] = json::parse(bqvc::run_config_to_json(summary.config));
  j["mode"] = split ? "split" : "multi_chain";
  j["iteration"] = report.iteration;
  j["cutoff"] = bqvc::kPsrfCutoff;
  j["converged"] = report.converged;
  j["max_psrf"] = report.max_psrf;
  j["checkpoints"] = report.checkpoints;
  json params = json::array();
  for (const auto& p : report.parameters)
    params.push_back({{"name", p.name},
                      {"psrf", p.psrf.value},
                      {"degenerate", p.psrf.degenerate},
                      {"divergent", p.psrf.divergent},
                      {"trace", p.trace}});
  j["parameters"] = std::move(params);
  const fs::path out_file = out.empty() ? summary_file.parent_path() / "psrf.json" : fs::path(out);
  bqvc::write_text(out_file, j.dump(2) + "\n");
  std::cout << (report.converged ? "converged" : "not converged") << ": max PSRF "
            << report.max_psrf << " over " << report.parameters.size()
            << " parameters; wrote " << out_file.string() << "\n";
  return 0;
}

struct StudyArgs {
  std::vector<std::string> errors{"normal"};
  std::vector<double> taus{0.5};
  std::vector<std::string> methods{"bqrvcss"};
  std::string covariates = "gene";
  bool heteroscedastic = false;
  bool hard_mode = false;
  int n = 200, p = 100;
  int replicates = 10;
  std::uint64_t seed_base = 1;
  std::string out;
};

int cmd_replicate_study(const StudyArgs& a, const FitFlags& flags) {
  bqvc::StudyConfig study;
  study.fit = resolve_config(flags);
  study.replicates = a.replicates;
  study.seed_base = a.seed_base;
  study.output_dir = a.out.empty() ? default_output_dir() : a.out;
  study.methods.clear();
  for (const auto& m : a.methods) study.methods.push_back(bqvc::parse_method(m));
  for (const auto& e : a.errors)
    for (double tau : a.taus) {
      bqvc::ScenarioSpec s;
      s.n = a.n;
      s.p = a.p;
      s.covariate_kind = bqvc::parse_covariate_kind(a.covariates);
      s.error_kind = bqvc::parse_error_kind(e);
      s.heteroscedastic = a.heteroscedastic;
      s.hard_mode = a.hard_mode;
      s.tau = tau;
      study.scenarios.push_back(s);
    }
  const auto result = bqvc::run_study(study, [](const bqvc::ReplicateRecord& r) {
    std::cout << r.scenario << " " << bqvc::to_string(r.method) << " rep " << r.replicate
              << (r.resumed ? " (resumed)" : "") << ": " << bqvc::to_string(r.evaluation.label)
              << " TIMSE " << r.evaluation.timse << std::endl;
  });
  for (const auto& ag : result.aggregates)
    std::cout << ag.scenario << " " << bqvc::to_string(ag.method) << ": C=" << ag.proportions.correct
              << " O=" << ag.proportions.over << " U=" << ag.proportions.under << " TIMSE "
              << bqvc::format_mean_sd(ag.timse) << "\n";
  std::cout << "wrote " << (fs::path(study.output_dir) / "aggregate.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian quantile varying-coefficient regression with spike-and-slab selection"};
  app.require_subcommand(1);
  app.footer(std::string("Default output directory: $") + kOutputEnv + " or ./bqvc_out");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "generate a simulated dataset and its truth");
  simulate->add_option("--n", sim.spec.n, "sample size")->capture_default_str();
  simulate->add_option("--p", sim.spec.p, "number of predictors")->capture_default_str();
  simulate->add_option("--covariates", sim.covariates, "gene | snp")->capture_default_str();
  simulate->add_option("--error", sim.error, "normal | normal_mixture | laplace | lognormal | t2")
      ->capture_default_str();
  simulate->add_flag("--heteroscedastic", sim.spec.heteroscedastic, "scale errors by (1 + X_2)");
  simulate->add_option("--tau", sim.spec.tau, "quantile level the errors are centered at")
      ->capture_default_str();
  simulate->add_option("--seed", sim.spec.seed, "data seed")->capture_default_str();
  simulate->add_flag("--hard-mode", sim.spec.hard_mode, "use gamma_0(v) = 2 + 2 sin(6 pi v)");
  simulate->add_option("--mixture-scale", sim.mixture, "variance | sd")->capture_default_str();
  simulate->add_option("--out", sim.out, "output directory");

  FitFlags fit_flags;
  auto* fit = app.add_subcommand("fit", "run the Gibbs sampler on a dataset CSV");
  fit->add_option("--data", fit_flags.data, "dataset CSV");
  fit->add_option("--out", fit_flags.out, "output directory");
  add_fit_flags(fit, fit_flags);

  std::vector<std::string> eval_fits, eval_truths;
  std::string eval_out;
  auto* evaluate = app.add_subcommand("evaluate", "score fits against the truth");
  evaluate->add_option("--fit", eval_fits, "fit directory or summary.json (repeatable)")
      ->required();
  evaluate->add_option("--truth", eval_truths, "truth.json for each --fit")->required();
  evaluate->add_option("--out", eval_out, "directory for batch tables");

  std::string diag_fit, diag_out;
  bool diag_split = false, diag_all = false;
  int diag_step = 1000;
  auto* diagnose = app.add_subcommand("diagnose", "Gelman-Rubin PSRF of a fit");
  diagnose->add_option("--fit", diag_fit, "fit directory or summary.json")->required();
  diagnose->add_flag("--split", diag_split, "split each chain in half");
  diagnose->add_flag("--all-coefficients", diag_all, "track every block, not only selected ones");
  diagnose->add_option("--checkpoint-step", diag_step, "trace spacing in stored draws")
      ->capture_default_str();
  diagnose->add_option("--out", diag_out, "report path");

  StudyArgs study;
  FitFlags study_flags;
  auto* replicate = app.add_subcommand("replicate-study", "simulate and fit replicates of a scenario grid");
  replicate->add_option("--errors", study.errors, "error kinds")->capture_default_str();
  replicate->add_option("--taus", study.taus, "quantile levels")->capture_default_str();
  replicate->add_option("--methods", study.methods, "samplers")->capture_default_str();
  replicate->add_option("--covariates", study.covariates, "gene | snp")->capture_default_str();
  replicate->add_flag("--heteroscedastic", study.heteroscedastic, "heteroscedastic errors");
  replicate->add_flag("--hard-mode", study.hard_mode, "high-frequency intercept");
  replicate->add_option("--n", study.n, "sample size")->capture_default_str();
  replicate->add_option("--p", study.p, "number of predictors")->capture_default_str();
  replicate->add_option("--replicates", study.replicates, "replicates per cell")->capture_default_str();
  replicate->add_option("--seed-base", study.seed_base, "replicate r uses seed base + r")
      ->capture_default_str();
  replicate->add_option("--out", study.out, "study directory (resumable)");
  add_fit_flags(replicate, study_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*simulate) return cmd_simulate(sim);
    if (*fit) return cmd_fit(fit_flags);
    if (*evaluate) return cmd_evaluate(eval_fits, eval_truths, eval_out);
    if (*diagnose) return cmd_diagnose(diag_fit, diag_split, diag_all, diag_step, diag_out);
    if (*replicate) return cmd_replicate_study(study, study_flags);
  } catch (const std::exception& e) {
    std::cerr << "bqvc: error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
