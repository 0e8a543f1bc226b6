#include "bqvc/posterior.hpp"

#include <exception>
#include <thread>

#include "bqvc/gaussian_sampler.hpp"
#include "bqvc/quantile_sampler.hpp"

namespace bqvc {

std::string ParameterLayout::column_name(Eigen::Index column, Method method) const {
  const bool quantile = is_quantile(method);
  if (column < (p + 1) * d)
    return "alpha[" + std::to_string(column / d) + "," + std::to_string(column % d + 1) + "]";
  if (column < scale()) return "beta[" + std::to_string(column - (p + 1) * d + 1) + "]";
  if (column == scale()) return quantile ? "theta" : "sigma_sq";
  if (column == shrinkage()) return quantile ? "eta_sq" : "lambda_sq";
  if (column == pi0()) return "pi0";
  if (column <= slab(p))
    return (quantile ? "g[" : "zeta_sq[") + std::to_string(column - slab(0)) + "]";
  if (column <= inclusion(p)) return "inclusion[" + std::to_string(column - inclusion(0)) + "]";
  throw std::out_of_range("column index outside layout");
}

Eigen::Index PosteriorSamples::total_draws() const {
  Eigen::Index total = 0;
  for (const auto& c : chains) total += c.values.rows();
  return total;
}

Eigen::VectorXd PosteriorSamples::pooled(Eigen::Index column) const {
  Eigen::VectorXd out(total_draws());
  Eigen::Index offset = 0;
  for (const auto& c : chains) {
    out.segment(offset, c.values.rows()) = c.values.col(column);
    offset += c.values.rows();
  }
  return out;
}

Eigen::MatrixXd PosteriorSamples::pooled_block(Eigen::Index j) const {
  Eigen::MatrixXd out(total_draws(), layout.d);
  Eigen::Index offset = 0;
  for (const auto& c : chains) {
    out.middleRows(offset, c.values.rows()) = c.values.middleCols(layout.alpha(j), layout.d);
    offset += c.values.rows();
  }
  return out;
}

namespace {

template <typename State>
void record_common(const State& s, const ParameterLayout& layout,
                   Eigen::Ref<Eigen::RowVectorXd> row) {
  for (Eigen::Index j = 0; j <= layout.p; ++j)
    row.segment(layout.alpha(j), layout.d) = s.alpha[static_cast<std::size_t>(j)].transpose();
  if (layout.q > 0) row.segment(layout.beta(0), layout.q) = s.beta.transpose();
  row[layout.pi0()] = s.pi0;
  for (Eigen::Index j = 1; j <= layout.p; ++j)
    row[layout.inclusion(j)] = s.inclusion[static_cast<std::size_t>(j - 1)] ? 1.0 : 0.0;
}

void record(const SamplerState& s, const ParameterLayout& layout,
            Eigen::Ref<Eigen::RowVectorXd> row) {
  record_common(s, layout, row);
  row[layout.scale()] = s.theta;
  row[layout.shrinkage()] = s.eta_sq;
  if (layout.p > 0) row.segment(layout.slab(1), layout.p) = s.g.transpose();
}

void record(const GaussianSamplerState& s, const ParameterLayout& layout,
            Eigen::Ref<Eigen::RowVectorXd> row) {
  record_common(s, layout, row);
  row[layout.scale()] = s.sigma_sq;
  row[layout.shrinkage()] = s.lambda_sq;
  if (layout.p > 0) row.segment(layout.slab(1), layout.p) = s.zeta_sq.transpose();
}

template <typename Sampler>
ChainDraws drive(Sampler& sampler, const ParameterLayout& layout,
                 const McmcOptions& mcmc, Rng& rng) {
  ChainDraws out;
  out.seed = rng.seed();
  out.stream_id = rng.stream_id();
  out.values.resize(mcmc.stored_draws(), layout.columns());
  Eigen::RowVectorXd row(layout.columns());
  Eigen::Index stored = 0;
  for (int it = 0; it < mcmc.iterations && stored < out.values.rows(); ++it) {
    sampler.sweep(rng);
    if (it < mcmc.burn_in) continue;
    if ((it - mcmc.burn_in + 1) % mcmc.thin != 0) continue;
    sampler.state().check_invariants();
    record(sampler.state(), layout, row);
    out.values.row(stored++) = row;
  }
  return out;
}

ChainDraws run_one(const ExpandedDesign& design, const Dataset& data,
                   const ParameterLayout& layout, const ModelSpec& model,
                   const McmcOptions& mcmc, Rng rng) {
  if (is_quantile(model.method)) {
    QuantileSampler sampler(design, data, QuantileLevel(model.tau), model.priors,
                            uses_spike_slab(model.method));
    return drive(sampler, layout, mcmc, rng);
  }
  GaussianSampler sampler(design, data, model.gaussian_priors,
                          uses_spike_slab(model.method));
  return drive(sampler, layout, mcmc, rng);
}

PosteriorSamples make_header(const Dataset& data, const SplineConfig& spline,
                             const ModelSpec& model, const McmcOptions& mcmc) {
  PosteriorSamples out;
  out.method = model.method;
  out.tau = model.tau;
  out.spline = spline;
  out.layout = {data.p(), spline.basis_count(), data.q()};
  out.mcmc = mcmc;
  return out;
}

}  // namespace

PosteriorSamples run_chain(const Dataset& data, const SplineConfig& spline,
                           const ModelSpec& model, const McmcOptions& mcmc, Rng rng) {
  mcmc.validate();
  data.validate();
  PosteriorSamples out = make_header(data, spline, model, mcmc);
  const ExpandedDesign design(data, spline);
  out.chains.push_back(run_one(design, data, out.layout, model, mcmc, std::move(rng)));
  return out;
}

PosteriorSamples run_chains(const Dataset& data, const SplineConfig& spline,
                            const ModelSpec& model, const McmcOptions& mcmc,
                            std::uint64_t seed, int chains) {
  if (chains < 1) throw std::invalid_argument("need at least one chain");
  mcmc.validate();
  data.validate();
  PosteriorSamples out = make_header(data, spline, model, mcmc);
  const ExpandedDesign design(data, spline);
  out.chains.resize(static_cast<std::size_t>(chains));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chains));
  {
    std::vector<std::jthread> workers;
    workers.reserve(static_cast<std::size_t>(chains));
    for (int c = 0; c < chains; ++c) {
      workers.emplace_back([&, c] {
        try {
          out.chains[static_cast<std::size_t>(c)] =
              run_one(design, data, out.layout, model, mcmc,
                      Rng(seed, static_cast<std::uint64_t>(c)));
        } catch (...) {
          errors[static_cast<std::size_t>(c)] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace bqvc
