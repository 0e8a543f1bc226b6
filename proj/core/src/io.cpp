#include "bqvc/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bqvc {

using json = nlohmann::ordered_json;

namespace {

constexpr char kSamplesMagic[8] = {'B', 'Q', 'V', 'C', 'S', 'M', 'P', '1'};
constexpr std::uint32_t kSamplesVersion = 1;

std::string format_double(double x) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(len));
}

double parse_double(std::string_view text, const fs::path& path, std::size_t line) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw IoError(path.string() + ":" + std::to_string(line) + ": bad number '" +
                  std::string(text) + "'");
  return value;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return std::string(s);
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return nullptr;
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  if (j.is_null()) return {};
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j.at(0).size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j.at(r).size()) != cols)
      throw IoError("ragged matrix in JSON");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = j.at(r).at(c).get<double>();
  }
  return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = j.at(i).get<double>();
  return v;
}

// Copies known keys from `from` into the target, rejecting anything else.
template <typename Fn>
void read_fields(const json& from, const char* what,
                 std::initializer_list<const char*> keys, Fn&& assign) {
  if (!from.is_object()) throw IoError(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : from.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw IoError("unknown field '" + key + "' in " + what);
    assign(key, value);
  }
}

json config_json(const RunConfig& c) {
  json j;
  j["method"] = std::string(to_string(c.method));
  j["tau"] = c.tau;
  j["spline"] = {{"degree", c.degree}, {"interior_knots", c.interior_knots}};
  j["priors"] = {{"a", c.priors.a},
                 {"b", c.priors.b},
                 {"c", c.priors.c},
                 {"m", c.priors.m},
                 {"e", c.priors.e},
                 {"f", c.priors.f},
                 {"sigma_beta", matrix_to_json(c.priors.sigma_beta)},
                 {"sigma_alpha0", matrix_to_json(c.priors.sigma_alpha0)}};
  j["gaussian_priors"] = {{"s", c.gaussian_priors.s},
                          {"h", c.gaussian_priors.h},
                          {"t", c.gaussian_priors.t},
                          {"psi", c.gaussian_priors.psi},
                          {"a", c.gaussian_priors.a},
                          {"b", c.gaussian_priors.b},
                          {"sigma_beta", matrix_to_json(c.gaussian_priors.sigma_beta)},
                          {"sigma_alpha0", matrix_to_json(c.gaussian_priors.sigma_alpha0)}};
  j["mcmc"] = {{"iterations", c.mcmc.iterations},
               {"burn_in", c.mcmc.burn_in},
               {"thin", c.mcmc.thin},
               {"chains", c.chains},
               {"seed", c.seed}};
  j["grid_points"] = c.grid_points;
  j["io"] = {{"data", c.data_path}, {"output_dir", c.output_dir}};
  return j;
}

RunConfig config_from(const json& j) {
  RunConfig c;
  read_fields(j, "config",
              {"method", "tau", "spline", "priors", "gaussian_priors", "mcmc", "grid_points",
               "io"},
              [&](const std::string& key, const json& v) {
                if (key == "method") c.method = parse_method(v.get<std::string>());
                else if (key == "tau") c.tau = v.get<double>();
                else if (key == "grid_points") c.grid_points = v.get<int>();
                else if (key == "spline")
                  read_fields(v, "spline", {"degree", "interior_knots"},
                              [&](const std::string& k, const json& x) {
                                (k == "degree" ? c.degree : c.interior_knots) = x.get<int>();
                              });
                else if (key == "priors")
                  read_fields(v, "priors",
                              {"a", "b", "c", "m", "e", "f", "sigma_beta", "sigma_alpha0"},
                              [&](const std::string& k, const json& x) {
                                auto& p = c.priors;
                                if (k == "sigma_beta") p.sigma_beta = matrix_from_json(x);
                                else if (k == "sigma_alpha0") p.sigma_alpha0 = matrix_from_json(x);
                                else if (k == "a") p.a = x.get<double>();
                                else if (k == "b") p.b = x.get<double>();
                                else if (k == "c") p.c = x.get<double>();
                                else if (k == "m") p.m = x.get<double>();
                                else if (k == "e") p.e = x.get<double>();
                                else p.f = x.get<double>();
                              });
                else if (key == "gaussian_priors")
                  read_fields(v, "gaussian_priors",
                              {"s", "h", "t", "psi", "a", "b", "sigma_beta", "sigma_alpha0"},
                              [&](const std::string& k, const json& x) {
                                auto& p = c.gaussian_priors;
                                if (k == "sigma_beta") p.sigma_beta = matrix_from_json(x);
                                else if (k == "sigma_alpha0") p.sigma_alpha0 = matrix_from_json(x);
                                else if (k == "s") p.s = x.get<double>();
                                else if (k == "h") p.h = x.get<double>();
                                else if (k == "t") p.t = x.get<double>();
                                else if (k == "psi") p.psi = x.get<double>();
                                else if (k == "a") p.a = x.get<double>();
                                else p.b = x.get<double>();
                              });
                else if (key == "mcmc")
                  read_fields(v, "mcmc", {"iterations", "burn_in", "thin", "chains", "seed"},
                              [&](const std::string& k, const json& x) {
                                if (k == "iterations") c.mcmc.iterations = x.get<int>();
                                else if (k == "burn_in") c.mcmc.burn_in = x.get<int>();
                                else if (k == "thin") c.mcmc.thin = x.get<int>();
                                else if (k == "chains") c.chains = x.get<int>();
                                else c.seed = x.get<std::uint64_t>();
                              });
                else
                  read_fields(v, "io", {"data", "output_dir"},
                              [&](const std::string& k, const json& x) {
                                (k == "data" ? c.data_path : c.output_dir) =
                                    x.get<std::string>();
                              });
              });
  return c;
}

json scenario_json(const ScenarioSpec& s) {
  return {{"n", s.n},
          {"p", s.p},
          {"covariate_kind", to_string(s.covariate_kind)},
          {"error_kind", to_string(s.error_kind)},
          {"heteroscedastic", s.heteroscedastic},
          {"tau", s.tau},
          {"seed", s.seed},
          {"hard_mode", s.hard_mode},
          {"mixture_scale", to_string(s.mixture_scale)}};
}

ScenarioSpec scenario_from(const json& j) {
  ScenarioSpec s;
  read_fields(j, "scenario",
              {"n", "p", "covariate_kind", "error_kind", "heteroscedastic", "tau", "seed",
               "hard_mode", "mixture_scale"},
              [&](const std::string& k, const json& x) {
                if (k == "n") s.n = x.get<Eigen::Index>();
                else if (k == "p") s.p = x.get<Eigen::Index>();
                else if (k == "covariate_kind")
                  s.covariate_kind = parse_covariate_kind(x.get<std::string>());
                else if (k == "error_kind") s.error_kind = parse_error_kind(x.get<std::string>());
                else if (k == "heteroscedastic") s.heteroscedastic = x.get<bool>();
                else if (k == "tau") s.tau = x.get<double>();
                else if (k == "seed") s.seed = x.get<std::uint64_t>();
                else if (k == "hard_mode") s.hard_mode = x.get<bool>();
                else s.mixture_scale = parse_mixture_scale(x.get<std::string>());
              });
  return s;
}

json evaluation_json(const Evaluation& e) {
  return {{"label", to_string(e.label)},
          {"selected", e.selected},
          {"support", e.support},
          {"timse", e.timse},
          {"imse", e.imse},
          {"coverage", e.coverage}};
}

Evaluation evaluation_from(const json& j) {
  Evaluation e;
  e.label = parse_fit_classification(j.at("label").get<std::string>());
  e.selected = j.at("selected").get<std::vector<int>>();
  e.support = j.at("support").get<std::vector<int>>();
  e.timse = j.at("timse").get<double>();
  e.imse = j.at("imse").get<std::vector<double>>();
  e.coverage = j.at("coverage").get<std::vector<double>>();
  return e;
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& ex) {
    throw IoError("malformed JSON in " + what + ": " + ex.what());
  }
}

template <typename T>
void write_raw(std::ostream& os, const T& value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <typename T>
T read_raw(std::istream& is, const fs::path& path) {
  T value{};
  is.read(reinterpret_cast<char*>(&value), sizeof value);
  if (!is) throw IoError(path.string() + ": truncated samples file");
  return value;
}

}  // namespace

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " to " + path.string());
}

void write_dataset_csv(const fs::path& path, const Dataset& data) {
  data.validate();
  std::string out = "V";
  for (Eigen::Index k = 1; k <= data.q(); ++k) out += ",E_" + std::to_string(k);
  for (Eigen::Index k = 1; k <= data.p(); ++k) out += ",X_" + std::to_string(k);
  out += ",Y\n";
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    out += format_double(data.v[i]);
    for (Eigen::Index k = 0; k < data.q(); ++k) out += "," + format_double(data.e(i, k));
    for (Eigen::Index k = 0; k < data.p(); ++k) out += "," + format_double(data.x(i, k));
    out += "," + format_double(data.y[i]) + "\n";
  }
  write_text(path, out);
}

Dataset read_dataset_csv(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty dataset file");
  const auto header = split_csv(line);
  Eigen::Index q = 0, p = 0;
  if (header.size() < 2 || trim(header.front()) != "V" || trim(header.back()) != "Y")
    throw IoError(path.string() + ": header must start with V and end with Y");
  for (std::size_t c = 1; c + 1 < header.size(); ++c) {
    const std::string name = trim(header[c]);
    if (name.rfind("E_", 0) == 0 && p == 0) ++q;
    else if (name.rfind("X_", 0) == 0) ++p;
    else throw IoError(path.string() + ": unexpected column '" + name + "'");
  }
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size())
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                    std::to_string(header.size()) + " fields");
    std::vector<double> row;
    row.reserve(cells.size());
    for (auto cell : cells) row.push_back(parse_double(cell, path, line_no));
    rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  Dataset d;
  d.v.resize(n);
  d.e.resize(n, q);
  d.x.resize(n, p);
  d.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    d.v[i] = r[0];
    for (Eigen::Index k = 0; k < q; ++k) d.e(i, k) = r[static_cast<std::size_t>(1 + k)];
    for (Eigen::Index k = 0; k < p; ++k) d.x(i, k) = r[static_cast<std::size_t>(1 + q + k)];
    d.y[i] = r.back();
  }
  d.validate();
  return d;
}

std::string run_config_to_json(const RunConfig& config) { return config_json(config).dump(2); }

RunConfig run_config_from_json(const std::string& text) {
  return config_from(parse_json(text, "run config"));
}

void write_run_config(const fs::path& path, const RunConfig& config) {
  write_text(path, run_config_to_json(config) + "\n");
}

RunConfig read_run_config(const fs::path& path) {
  return run_config_from_json(read_text(path));
}

std::string scenario_to_json(const ScenarioSpec& spec) { return scenario_json(spec).dump(2); }

ScenarioSpec scenario_from_json(const std::string& text) {
  return scenario_from(parse_json(text, "scenario"));
}

void write_truth(const fs::path& path, const SimulatedData& sim, int grid_points) {
  const Eigen::VectorXd grid = uniform_grid(grid_points);
  json j;
  j["scenario"] = scenario_json(sim.spec);
  j["support"] = sim.support;
  j["grid"] = vector_to_json(grid);
  json curves = json::object();
  for (Eigen::Index c = 0; c <= 3 && c <= sim.truth.p; ++c)
    curves["gamma_" + std::to_string(c)] = vector_to_json(sim.truth.on_grid(c, grid));
  j["curves"] = std::move(curves);
  write_text(path, j.dump(2) + "\n");
}

TruthFile read_truth(const fs::path& path) {
  if (!fs::exists(path)) throw IoError("truth file not found: " + path.string());
  const json j = parse_json(read_text(path), path.string());
  TruthFile out;
  out.spec = scenario_from(j.at("scenario"));
  out.truth = TrueCurves{out.spec.p, out.spec.hard_mode};
  out.support = j.at("support").get<std::vector<int>>();
  return out;
}

fs::path samples_sidecar(const fs::path& path) {
  fs::path side = path;
  side.replace_extension(".json");
  if (side == path) side += ".json";
  return side;
}

void write_samples(const fs::path& path, const PosteriorSamples& samples,
                   const RunConfig& config) {
  static_assert(std::endian::native == std::endian::little,
                "samples format is little-endian");
  std::ostringstream os(std::ios::binary);
  os.write(kSamplesMagic, sizeof kSamplesMagic);
  write_raw(os, kSamplesVersion);
  write_raw(os, static_cast<std::uint32_t>(samples.chains.size()));
  write_raw(os, static_cast<std::uint64_t>(samples.draws_per_chain()));
  write_raw(os, static_cast<std::uint64_t>(samples.layout.columns()));
  for (const auto& chain : samples.chains) {
    if (chain.values.rows() != samples.draws_per_chain() ||
        chain.values.cols() != samples.layout.columns())
      throw IoError("chains have inconsistent shapes");
    write_raw(os, chain.seed);
    write_raw(os, chain.stream_id);
    os.write(reinterpret_cast<const char*>(chain.values.data()),
             static_cast<std::streamsize>(chain.values.size() * sizeof(double)));
  }
  write_text(path, os.str());

  json side;
  side["format"] = "bqvc-samples";
  side["version"] = kSamplesVersion;
  side["binary"] = path.filename().string();
  side["method"] = std::string(to_string(samples.method));
  side["tau"] = samples.tau;
  side["spline"] = {{"degree", samples.spline.degree()},
                    {"interior_knots", samples.spline.interior_knots()}};
  side["layout"] = {{"p", samples.layout.p}, {"d", samples.layout.d}, {"q", samples.layout.q}};
  side["mcmc"] = {{"iterations", samples.mcmc.iterations},
                  {"burn_in", samples.mcmc.burn_in},
                  {"thin", samples.mcmc.thin}};
  json chains = json::array();
  for (const auto& chain : samples.chains)
    chains.push_back({{"seed", chain.seed},
                      {"stream_id", chain.stream_id},
                      {"draws", chain.values.rows()}});
  side["chains"] = std::move(chains);
  json names = json::array();
  for (Eigen::Index c = 0; c < samples.layout.columns(); ++c)
    names.push_back(samples.layout.column_name(c, samples.method));
  side["columns"] = std::move(names);
  side["config"] = config_json(config);
  write_text(samples_sidecar(path), side.dump(2) + "\n");
}

PosteriorSamples read_samples(const fs::path& path) {
  const json side = parse_json(read_text(samples_sidecar(path)), "samples sidecar");
  if (side.at("format") != "bqvc-samples") throw IoError(path.string() + ": not a samples sidecar");
  PosteriorSamples s;
  s.method = parse_method(side.at("method").get<std::string>());
  s.tau = side.at("tau").get<double>();
  s.spline = SplineConfig(side.at("spline").at("degree").get<int>(),
                          side.at("spline").at("interior_knots").get<int>());
  s.layout.p = side.at("layout").at("p").get<Eigen::Index>();
  s.layout.d = side.at("layout").at("d").get<Eigen::Index>();
  s.layout.q = side.at("layout").at("q").get<Eigen::Index>();
  s.mcmc.iterations = side.at("mcmc").at("iterations").get<int>();
  s.mcmc.burn_in = side.at("mcmc").at("burn_in").get<int>();
  s.mcmc.thin = side.at("mcmc").at("thin").get<int>();

  std::istringstream in(read_text(path), std::ios::binary);
  char magic[sizeof kSamplesMagic];
  in.read(magic, sizeof magic);
  if (!in || !std::equal(magic, magic + sizeof magic, kSamplesMagic))
    throw IoError(path.string() + ": not a samples file");
  if (read_raw<std::uint32_t>(in, path) != kSamplesVersion)
    throw IoError(path.string() + ": unsupported samples version");
  const auto chains = read_raw<std::uint32_t>(in, path);
  const auto rows = static_cast<Eigen::Index>(read_raw<std::uint64_t>(in, path));
  const auto cols = static_cast<Eigen::Index>(read_raw<std::uint64_t>(in, path));
  if (cols != s.layout.columns()) throw IoError(path.string() + ": column count mismatch");
  for (std::uint32_t c = 0; c < chains; ++c) {
    ChainDraws chain;
    chain.seed = read_raw<std::uint64_t>(in, path);
    chain.stream_id = read_raw<std::uint64_t>(in, path);
    chain.values.resize(rows, cols);
    in.read(reinterpret_cast<char*>(chain.values.data()),
            static_cast<std::streamsize>(chain.values.size() * sizeof(double)));
    if (!in) throw IoError(path.string() + ": truncated samples file");
    s.chains.push_back(std::move(chain));
  }
  return s;
}

void write_curves_csv(const fs::path& path, const std::vector<CurveEstimate>& curves) {
  std::string out = "j,v,median,lower,upper\n";
  for (std::size_t j = 0; j < curves.size(); ++j) {
    const auto& c = curves[j];
    for (Eigen::Index t = 0; t < c.grid.size(); ++t)
      out += std::to_string(j) + "," + format_double(c.grid[t]) + "," +
             format_double(c.median[t]) + "," + format_double(c.lower[t]) + "," +
             format_double(c.upper[t]) + "\n";
  }
  write_text(path, out);
}

std::vector<CurveEstimate> read_curves_csv(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line) || trim(line) != "j,v,median,lower,upper")
    throw IoError(path.string() + ": bad curves header");
  std::vector<std::vector<std::array<double, 4>>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 5) throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected 5 fields");
    const auto j = static_cast<std::size_t>(parse_double(cells[0], path, line_no));
    if (j > rows.size()) throw IoError(path.string() + ": curves out of order");
    if (j == rows.size()) rows.emplace_back();
    rows[j].push_back({parse_double(cells[1], path, line_no), parse_double(cells[2], path, line_no),
                       parse_double(cells[3], path, line_no), parse_double(cells[4], path, line_no)});
  }
  std::vector<CurveEstimate> out;
  for (const auto& r : rows) {
    const auto g = static_cast<Eigen::Index>(r.size());
    CurveEstimate c{Eigen::VectorXd(g), Eigen::VectorXd(g), Eigen::VectorXd(g), Eigen::VectorXd(g)};
    for (Eigen::Index t = 0; t < g; ++t) {
      const auto& row = r[static_cast<std::size_t>(t)];
      c.grid[t] = row[0];
      c.median[t] = row[1];
      c.lower[t] = row[2];
      c.upper[t] = row[3];
    }
    out.push_back(std::move(c));
  }
  return out;
}

void write_fit_summary(const fs::path& path, const FitResult& fit,
                       const std::string& samples_file, const std::string& curves_file) {
  json j;
  j["config"] = config_json(fit.config);
  j["method"] = std::string(to_string(fit.samples.method));
  j["selection"] = {{"rule", fit.selection_rule}, {"selected", fit.selected}};
  if (fit.inclusion_probs.size() > 0)
    j["selection"]["inclusion_probabilities"] = vector_to_json(fit.inclusion_probs);
  json scalars = json::array();
  for (const auto& s : fit.scalars)
    scalars.push_back({{"name", s.name}, {"median", s.median}, {"lower", s.lower}, {"upper", s.upper}});
  j["scalars"] = std::move(scalars);
  json chains = json::array();
  for (const auto& c : fit.samples.chains)
    chains.push_back({{"seed", c.seed}, {"stream_id", c.stream_id}, {"draws", c.values.rows()}});
  j["chains"] = std::move(chains);
  j["files"] = {{"samples", samples_file}, {"curves", curves_file}};
  j["wall_clock_seconds"] = fit.seconds;
  write_text(path, j.dump(2) + "\n");
}

FitSummary read_fit_summary(const fs::path& path) {
  if (!fs::exists(path)) throw IoError("fit summary not found: " + path.string());
  const json j = parse_json(read_text(path), path.string());
  FitSummary out;
  out.config = config_from(j.at("config"));
  out.selection_rule = j.at("selection").at("rule").get<std::string>();
  out.selected = j.at("selection").at("selected").get<std::vector<int>>();
  if (j.at("selection").contains("inclusion_probabilities"))
    out.inclusion_probs = vector_from_json(j.at("selection").at("inclusion_probabilities"));
  out.samples_file = j.at("files").at("samples").get<std::string>();
  out.curves_file = j.at("files").at("curves").get<std::string>();
  return out;
}

std::string evaluation_to_json(const Evaluation& evaluation, const RunConfig& config) {
  json j = evaluation_json(evaluation);
  j["config"] = config_json(config);
  return j.dump(2);
}

void write_evaluation(const fs::path& path, const Evaluation& evaluation,
                      const RunConfig& config) {
  write_text(path, evaluation_to_json(evaluation, config) + "\n");
}

std::string replicate_to_json(const ReplicateRecord& r, const RunConfig& config) {
  json j;
  j["scenario"] = r.scenario;
  j["method"] = std::string(to_string(r.method));
  j["replicate"] = r.replicate;
  j["seed"] = r.seed;
  j["seconds"] = r.seconds;
  j["evaluation"] = evaluation_json(r.evaluation);
  j["config"] = config_json(config);
  return j.dump(2);
}

ReplicateRecord replicate_from_json(const std::string& text) {
  const json j = parse_json(text, "replicate manifest");
  ReplicateRecord r;
  r.scenario = j.at("scenario").get<std::string>();
  r.method = parse_method(j.at("method").get<std::string>());
  r.replicate = j.at("replicate").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.seconds = j.at("seconds").get<double>();
  r.evaluation = evaluation_from(j.at("evaluation"));
  return r;
}

void write_fits_csv(const fs::path& path, const std::vector<ReplicateRecord>& fits) {
  std::string out = "scenario,method,replicate,seed,label,timse,imse_0,imse_1,imse_2,imse_3,"
                    "coverage_0,coverage_1,coverage_2,coverage_3,selected,seconds\n";
  for (const auto& r : fits) {
    const auto& e = r.evaluation;
    out += r.scenario + "," + std::string(to_string(r.method)) + "," +
           std::to_string(r.replicate) + "," + std::to_string(r.seed) + "," +
           to_string(e.label) + "," + format_double(e.timse);
    for (std::size_t j = 0; j < 4; ++j)
      out += "," + (j < e.imse.size() ? format_double(e.imse[j]) : std::string());
    for (std::size_t j = 0; j < 4; ++j)
      out += "," + (j < e.coverage.size() ? format_double(e.coverage[j]) : std::string());
    std::string sel;
    for (int s : e.selected) sel += (sel.empty() ? "" : " ") + std::to_string(s);
    out += "," + sel + "," + format_double(r.seconds) + "\n";
  }
  write_text(path, out);
}

void write_aggregate_csv(const fs::path& path,
                         const std::vector<AggregateRecord>& aggregates) {
  std::string out = "scenario,method,replicates,C,O,U,timse,coverage_0,coverage_1,coverage_2,"
                    "coverage_3\n";
  char buf[64];
  for (const auto& a : aggregates) {
    out += a.scenario + "," + std::string(to_string(a.method)) + "," +
           std::to_string(a.replicates);
    for (double v : {a.proportions.correct, a.proportions.over, a.proportions.under}) {
      std::snprintf(buf, sizeof buf, ",%.2f", v);
      out += buf;
    }
    out += "," + format_mean_sd(a.timse);
    for (double v : a.mean_coverage) {
      std::snprintf(buf, sizeof buf, ",%.3f", v);
      out += buf;
    }
    out += "\n";
  }
  write_text(path, out);
}

}  // namespace bqvc
