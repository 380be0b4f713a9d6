// run.cpp — JSON-configured simulation runs, comparisons, and config checks.
#include "rcme/run.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace rcme::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& path,
                       const std::string& message) {
  throw ConfigError(origin + ": " + path + ": " + message);
}

void require_object(const json& node, const std::string& origin, const std::string& path) {
  if (!node.is_object()) {
    fail(origin, path, "expected an object");
  }
}

void reject_unknown(const json& node, const std::vector<std::string>& allowed,
                    const std::string& origin, const std::string& path) {
  for (const auto& item : node.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      std::string known;
      for (const auto& key : allowed) {
        known += (known.empty() ? "" : ", ") + key;
      }
      fail(origin, path, "unknown key \"" + item.key() + "\" (known keys: " + known + ")");
    }
  }
}

const json* find(const json& node, const std::string& key) {
  const auto it = node.find(key);
  return it == node.end() ? nullptr : &*it;
}

const json& require(const json& node, const std::string& key, const std::string& origin,
                    const std::string& path) {
  const json* child = find(node, key);
  if (child == nullptr) {
    fail(origin, path, "missing required key \"" + key + "\"");
  }
  return *child;
}

double as_number(const json& node, const std::string& origin, const std::string& path) {
  if (!node.is_number()) {
    fail(origin, path, "expected a number");
  }
  return node.get<double>();
}

int as_int(const json& node, const std::string& origin, const std::string& path) {
  if (!node.is_number_integer()) {
    fail(origin, path, "expected an integer");
  }
  return node.get<int>();
}

std::string as_string(const json& node, const std::string& origin, const std::string& path) {
  if (!node.is_string()) {
    fail(origin, path, "expected a string");
  }
  return node.get<std::string>();
}

linalg::Complex parse_entry(const json& node, const std::string& origin,
                            const std::string& path) {
  if (node.is_number()) {
    return {node.get<double>(), 0.0};
  }
  if (node.is_array() && node.size() == 2 && node[0].is_number() && node[1].is_number()) {
    return {node[0].get<double>(), node[1].get<double>()};
  }
  fail(origin, path, "expected a real number or an [re, im] pair");
}

linalg::Matrix parse_matrix(const json& node, const std::string& origin,
                            const std::string& path) {
  if (!node.is_array() || node.empty()) {
    fail(origin, path, "expected a non-empty array of rows");
  }
  const auto dim = static_cast<Eigen::Index>(node.size());
  linalg::Matrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const json& row = node[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
      fail(origin, path, "row " + std::to_string(r) + " must have " + std::to_string(dim) +
                             " entries");
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
      m(r, c) = parse_entry(row[static_cast<std::size_t>(c)], origin,
                            path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

linalg::Matrix preset_state(const std::string& name, Eigen::Index dim,
                            const std::string& origin, const std::string& path) {
  linalg::Matrix m = linalg::Matrix::Zero(dim, dim);
  if (name == "ground") {
    m(dim - 1, dim - 1) = 1.0;
    return m;
  }
  if (name == "excited") {
    m(0, 0) = 1.0;
    return m;
  }
  if (name == "maximally-mixed") {
    return linalg::Matrix::Identity(dim, dim) / static_cast<double>(dim);
  }
  if (name == "uniform-superposition") {
    linalg::Vector psi = linalg::Vector::Ones(dim) / std::sqrt(static_cast<double>(dim));
    return psi * psi.adjoint();
  }
  if (dim == 2) {
    const linalg::Complex i(0.0, 1.0);
    if (name == "plus-x") {
      m << 0.5, 0.5, 0.5, 0.5;
      return m;
    }
    if (name == "plus-y") {
      m << 0.5, -0.5 * i, 0.5 * i, 0.5;
      return m;
    }
    if (name == "minus-y") {
      m << 0.5, 0.5 * i, -0.5 * i, 0.5;
      return m;
    }
  }
  fail(origin, path,
       "unknown state preset \"" + name +
           "\" (known presets: ground, excited, maximally-mixed, uniform-superposition" +
           (dim == 2 ? ", plus-x, plus-y, minus-y)" : ")"));
}

linalg::Matrix parse_state(const json& node, Eigen::Index dim, std::string& label,
                           const std::string& origin, const std::string& path) {
  linalg::Matrix m;
  if (node.is_string()) {
    label = node.get<std::string>();
    m = preset_state(label, dim, origin, path);
  } else if (node.is_object()) {
    reject_unknown(node, {"matrix"}, origin, path);
    m = parse_matrix(require(node, "matrix", origin, path), origin, path + ".matrix");
    label = "matrix";
  } else {
    fail(origin, path, "expected a preset name or {\"matrix\": [...]}");
  }
  if (m.rows() != dim) {
    fail(origin, path,
         "state dimension " + std::to_string(m.rows()) + " does not match the model dimension " +
             std::to_string(dim));
  }
  try {
    models::make_density(m);
  } catch (const std::invalid_argument& e) {
    fail(origin, path, std::string("not a density matrix: ") + e.what());
  }
  return m;
}

std::optional<bath::SpectralKind> spectral_kind_from_string(const std::string& name) {
  if (name == "ohmic") return bath::SpectralKind::ohmic;
  if (name == "ohmic-exponential-cutoff") return bath::SpectralKind::ohmic_exp_cutoff;
  if (name == "ohmic-sharp-cutoff") return bath::SpectralKind::ohmic_sharp_cutoff;
  return std::nullopt;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

std::string observable_header(const std::vector<std::pair<int, int>>& observables) {
  std::string header = "t";
  for (const auto& [r, c] : observables) {
    const std::string base = "rho_" + std::to_string(r) + std::to_string(c);
    header += "," + base + "_re," + base + "_im," + base + "_abs";
  }
  return header;
}

void append_series_rows(std::ofstream& out, const models::TimeSeries& series,
                        const std::vector<std::pair<int, int>>& observables,
                        const std::string& row_prefix) {
  std::vector<std::vector<std::array<double, 3>>> tracks;
  tracks.reserve(observables.size());
  for (const auto& [r, c] : observables) {
    tracks.push_back(models::observable_track(series, {r, c}));
  }
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    out << row_prefix << format_double(series.times[k]);
    for (const auto& track : tracks) {
      out << ',' << format_double(track[k][0]) << ',' << format_double(track[k][1]) << ','
          << format_double(track[k][2]);
    }
    out << '\n';
  }
}

void write_series_csv(const std::filesystem::path& path, const models::TimeSeries& series,
                      const std::vector<std::pair<int, int>>& observables) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << observable_header(observables) << '\n';
  append_series_rows(out, series, observables, "");
}

json bath_echo(const bath::BathModel& b) {
  json j;
  j["kind"] = bath::to_string(b.spectral.kind);
  j["alpha"] = b.spectral.alpha;
  if (bath::has_cutoff(b.spectral)) {
    j["omega_c"] = b.spectral.omega_c;
  }
  j["T_eff"] = b.T_eff;
  return j;
}

json config_echo(const RunConfig& config) {
  json j;
  j["model"] = config.model_kind;
  if (config.model_kind == "qutrit-boson") {
    j["delta_omega"] = config.delta_omega;
  }
  j["bath"] = bath_echo(config.model.bath);
  j["method"] = generators::to_string(config.method);
  j["initial_state"] = config.initial_state_label;
  if (config.witness_state) {
    j["witness_state"] = config.witness_state_label;
  }
  j["time_grid"] = {{"t_min", config.grid.t_min},
                    {"t_max", config.grid.t_max},
                    {"n_points", config.grid.n_points},
                    {"spacing", config.grid.spacing}};
  return j;
}

// Indices of up to n roughly evenly spaced grid points, always including the
// last one.
std::vector<std::size_t> spot_indices(std::size_t size, std::size_t n) {
  std::set<std::size_t> picks;
  if (size == 0) {
    return {};
  }
  const std::size_t count = std::min(n, size);
  for (std::size_t k = 0; k < count; ++k) {
    picks.insert((k * (size - 1)) / (count == 1 ? 1 : count - 1));
  }
  picks.insert(size - 1);
  return {picks.begin(), picks.end()};
}

struct MapBuilder {
  const generators::BohrDecomposition& dec;
  const RunConfig& config;
  rates::RateKernel kernel;
  linalg::Superoperator fixed;  // Davies generators only
  bool cumulant{false};

  MapBuilder(const generators::SystemModel& system, const generators::BohrDecomposition& d,
             const RunConfig& c)
      : dec(d), config(c) {
    kernel.bath = c.model.bath;
    kernel.quadrature = c.quadrature;
    switch (c.method) {
      case generators::EvolutionMethod::exact_cutoff:
        kernel.method = rates::Method::exact_cutoff;
        cumulant = true;
        break;
      case generators::EvolutionMethod::star:
        kernel.method = rates::Method::star;
        cumulant = true;
        break;
      case generators::EvolutionMethod::doublestar:
        kernel.method = rates::Method::doublestar;
        cumulant = true;
        break;
      case generators::EvolutionMethod::davies_global:
        kernel.method = rates::Method::markov;
        fixed = generators::davies_global_generator(dec, kernel);
        break;
      case generators::EvolutionMethod::davies_local: {
        kernel.method = rates::Method::markov;
        const auto grouping = generators::group_frequencies(dec.frequencies, c.gap_threshold);
        fixed = generators::davies_local_generator(system, dec, grouping, kernel);
        break;
      }
    }
  }

  linalg::Superoperator map_at(double t) const {
    if (cumulant) {
      const auto k = generators::cumulant_generator(dec, kernel, t);
      return {k.dim, linalg::matrix_exp(k.mat)};
    }
    return {fixed.dim, linalg::matrix_exp(t * fixed.mat)};
  }
};

}  // namespace

std::vector<double> make_time_grid(const TimeGrid& grid) {
  if (grid.n_points < 2) {
    throw ConfigError("time_grid.n_points must be at least 2");
  }
  if (!(grid.t_max > grid.t_min)) {
    throw ConfigError("time_grid.t_max must exceed t_min");
  }
  if (grid.spacing != "linear" && grid.spacing != "log") {
    throw ConfigError("time_grid.spacing must be \"linear\" or \"log\"");
  }
  if (!(grid.t_min >= 0.0)) {
    throw ConfigError("time_grid.t_min must be >= 0");
  }
  if (grid.spacing == "log" && !(grid.t_min > 0.0)) {
    throw ConfigError("time_grid.t_min must be > 0 for log spacing");
  }
  const int n = grid.n_points;
  std::vector<double> times(static_cast<std::size_t>(n));
  if (grid.spacing == "linear") {
    const double step = (grid.t_max - grid.t_min) / (n - 1);
    for (int i = 0; i < n; ++i) {
      times[static_cast<std::size_t>(i)] = grid.t_min + step * i;
    }
  } else {
    const double ratio = std::log(grid.t_max / grid.t_min) / (n - 1);
    for (int i = 0; i < n; ++i) {
      times[static_cast<std::size_t>(i)] = grid.t_min * std::exp(ratio * i);
    }
  }
  times.back() = grid.t_max;
  return times;
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": invalid JSON: " + e.what());
  }
  require_object(root, origin, "top level");
  reject_unknown(root,
                 {"version", "model", "bath", "method", "time_grid", "initial_state",
                  "witness_state", "observables", "grouping", "quadrature", "output"},
                 origin, "top level");

  if (as_int(require(root, "version", origin, "top level"), origin, "version") != 1) {
    fail(origin, "version", "only version 1 is supported");
  }

  RunConfig config;

  const json& model = require(root, "model", origin, "top level");
  require_object(model, origin, "model");
  reject_unknown(model, {"kind", "delta_omega"}, origin, "model");
  config.model_kind = as_string(require(model, "kind", origin, "model"), origin, "model.kind");
  if (config.model_kind == "qutrit-boson") {
    config.delta_omega =
        as_number(require(model, "delta_omega", origin, "model"), origin, "model.delta_omega");
    if (!(config.delta_omega > 0.0) || !(config.delta_omega < 2.0)) {
      fail(origin, "model.delta_omega", "must lie in (0, 2)");
    }
  } else if (config.model_kind == "spin-boson") {
    if (find(model, "delta_omega") != nullptr) {
      fail(origin, "model.delta_omega", "only meaningful for the qutrit-boson model");
    }
  } else {
    fail(origin, "model.kind",
         "unknown model \"" + config.model_kind + "\" (known: spin-boson, qutrit-boson)");
  }

  const json& bath_node = require(root, "bath", origin, "top level");
  require_object(bath_node, origin, "bath");
  reject_unknown(bath_node, {"kind", "alpha", "omega_c", "T_eff"}, origin, "bath");
  const std::string bath_kind_name =
      as_string(require(bath_node, "kind", origin, "bath"), origin, "bath.kind");
  const auto bath_kind = spectral_kind_from_string(bath_kind_name);
  if (!bath_kind) {
    fail(origin, "bath.kind",
         "unknown spectral density \"" + bath_kind_name +
             "\" (known: ohmic, ohmic-exponential-cutoff, ohmic-sharp-cutoff)");
  }
  const double alpha =
      as_number(require(bath_node, "alpha", origin, "bath"), origin, "bath.alpha");
  const double T_eff =
      as_number(require(bath_node, "T_eff", origin, "bath"), origin, "bath.T_eff");
  double omega_c = 0.0;
  const bool cutoff_kind = bath_kind != bath::SpectralKind::ohmic;
  if (cutoff_kind) {
    omega_c =
        as_number(require(bath_node, "omega_c", origin, "bath"), origin, "bath.omega_c");
  } else if (find(bath_node, "omega_c") != nullptr) {
    fail(origin, "bath.omega_c", "only meaningful for cutoff spectral densities");
  }
  bath::BathModel bath_model;
  try {
    bath_model = bath::make_bath(*bath_kind, alpha, omega_c, T_eff);
  } catch (const std::invalid_argument& e) {
    fail(origin, "bath", e.what());
  }

  const std::string method_name =
      as_string(require(root, "method", origin, "top level"), origin, "method");
  const auto method = generators::evolution_method_from_string(method_name);
  if (!method) {
    fail(origin, "method",
         "unknown method \"" + method_name +
             "\" (known: exact-cutoff, star, doublestar, davies-global, davies-local)");
  }
  config.method = *method;
  if (config.method == generators::EvolutionMethod::exact_cutoff &&
      !bath::has_cutoff(bath_model.spectral)) {
    fail(origin, "method",
         "exact-cutoff requires a bath with a cutoff; the plain ohmic integral diverges");
  }

  if (config.model_kind == "spin-boson") {
    config.model = models::spin_boson(alpha, T_eff, *bath_kind, omega_c);
  } else {
    config.model = models::qutrit_boson(alpha, T_eff, config.delta_omega);
    config.model.bath = bath_model;
  }
  const Eigen::Index dim = config.model.system.hamiltonian.rows();

  const json& grid = require(root, "time_grid", origin, "top level");
  require_object(grid, origin, "time_grid");
  reject_unknown(grid, {"t_min", "t_max", "n_points", "spacing"}, origin, "time_grid");
  config.grid.t_max =
      as_number(require(grid, "t_max", origin, "time_grid"), origin, "time_grid.t_max");
  config.grid.n_points =
      as_int(require(grid, "n_points", origin, "time_grid"), origin, "time_grid.n_points");
  if (const json* t_min = find(grid, "t_min")) {
    config.grid.t_min = as_number(*t_min, origin, "time_grid.t_min");
  }
  if (const json* spacing = find(grid, "spacing")) {
    config.grid.spacing = as_string(*spacing, origin, "time_grid.spacing");
  }
  try {
    make_time_grid(config.grid);
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  }

  config.initial_state = parse_state(require(root, "initial_state", origin, "top level"), dim,
                                     config.initial_state_label, origin, "initial_state");
  if (const json* witness = find(root, "witness_state")) {
    config.witness_state =
        parse_state(*witness, dim, config.witness_state_label, origin, "witness_state");
  }

  if (const json* observables = find(root, "observables")) {
    if (!observables->is_array() || observables->empty()) {
      fail(origin, "observables", "expected a non-empty array of [row, col] pairs");
    }
    for (std::size_t k = 0; k < observables->size(); ++k) {
      const json& pair = (*observables)[k];
      const std::string path = "observables[" + std::to_string(k) + "]";
      if (!pair.is_array() || pair.size() != 2) {
        fail(origin, path, "expected a [row, col] pair");
      }
      const int r = as_int(pair[0], origin, path + "[0]");
      const int c = as_int(pair[1], origin, path + "[1]");
      if (r < 0 || c < 0 || r >= dim || c >= dim) {
        fail(origin, path, "indices must lie in [0, " + std::to_string(dim - 1) + "]");
      }
      config.observables.emplace_back(r, c);
    }
  } else {
    for (int r = 0; r < dim; ++r) {
      for (int c = r; c < dim; ++c) {
        config.observables.emplace_back(r, c);
      }
    }
  }

  if (const json* grouping = find(root, "grouping")) {
    if (config.method != generators::EvolutionMethod::davies_local) {
      fail(origin, "grouping", "only meaningful for the davies-local method");
    }
    require_object(*grouping, origin, "grouping");
    reject_unknown(*grouping, {"gap_threshold"}, origin, "grouping");
    config.gap_threshold = as_number(require(*grouping, "gap_threshold", origin, "grouping"),
                                     origin, "grouping.gap_threshold");
    if (!(config.gap_threshold > 0.0)) {
      fail(origin, "grouping.gap_threshold", "must be > 0");
    }
  }

  if (const json* quadrature = find(root, "quadrature")) {
    require_object(*quadrature, origin, "quadrature");
    reject_unknown(*quadrature, {"rel_tol", "abs_tol", "max_subdivisions", "tail_epsilon"},
                   origin, "quadrature");
    if (const json* v = find(*quadrature, "rel_tol")) {
      config.quadrature.rel_tol = as_number(*v, origin, "quadrature.rel_tol");
    }
    if (const json* v = find(*quadrature, "abs_tol")) {
      config.quadrature.abs_tol = as_number(*v, origin, "quadrature.abs_tol");
    }
    if (const json* v = find(*quadrature, "max_subdivisions")) {
      config.quadrature.max_subdivisions = as_int(*v, origin, "quadrature.max_subdivisions");
    }
    if (const json* v = find(*quadrature, "tail_epsilon")) {
      config.quadrature.tail_epsilon = as_number(*v, origin, "quadrature.tail_epsilon");
    }
    try {
      quad::validate(config.quadrature);
    } catch (const std::invalid_argument& e) {
      fail(origin, "quadrature", e.what());
    }
  }

  config.output_stem = config.model_kind + "-" + generators::to_string(config.method);
  if (const json* output = find(root, "output")) {
    require_object(*output, origin, "output");
    reject_unknown(*output, {"dir", "stem"}, origin, "output");
    if (const json* dir = find(*output, "dir")) {
      config.output_dir = as_string(*dir, origin, "output.dir");
    }
    if (const json* stem = find(*output, "stem")) {
      config.output_stem = as_string(*stem, origin, "output.stem");
      if (config.output_stem.empty()) {
        fail(origin, "output.stem", "must be non-empty");
      }
    }
  }
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string());
}

namespace {

RunArtifacts run_collecting(const RunConfig& config, const std::filesystem::path& out_dir,
                            const std::optional<std::filesystem::path>& report_path,
                            generators::PropagationResult* result_out) {
  const auto t_start = std::chrono::steady_clock::now();
  const std::filesystem::path dir =
      out_dir.empty() ? std::filesystem::path(config.output_dir) : out_dir;
  std::filesystem::create_directories(dir);

  generators::PropagationOptions options;
  options.method = config.method;
  options.bath = config.model.bath;
  options.quadrature = config.quadrature;
  options.gap_threshold = config.gap_threshold;

  const std::vector<double> times = make_time_grid(config.grid);
  const auto rho0 = models::make_density(config.initial_state);
  const auto result = generators::propagate(config.model.system, options, rho0, times);
  const auto t_propagated = std::chrono::steady_clock::now();

  RunArtifacts artifacts;
  artifacts.schrodinger_csv = dir / (config.output_stem + "_schrodinger.csv");
  artifacts.interaction_csv = dir / (config.output_stem + "_interaction.csv");
  write_series_csv(artifacts.schrodinger_csv, result.schrodinger, config.observables);
  write_series_csv(artifacts.interaction_csv, result.interaction, config.observables);

  json report;
  report["version"] = 1;
  report["config"] = config_echo(config);

  json per_time = json::array();
  for (const auto& d : result.diagnostics) {
    per_time.push_back({{"t", d.t},
                        {"trace_defect", d.trace_defect},
                        {"min_eigenvalue", d.min_eigenvalue},
                        {"hermiticity_defect", d.hermiticity_defect}});
  }
  report["state_diagnostics"] = std::move(per_time);

  const generators::BohrDecomposition dec = generators::bohr_decompose(config.model.system);
  const MapBuilder builder(config.model.system, dec, config);
  json map_checks = json::array();
  for (std::size_t idx : spot_indices(times.size(), 5)) {
    const auto map = builder.map_at(times[idx]);
    const auto cptp = linalg::is_cptp(map, 1e-8);
    map_checks.push_back({{"t", times[idx]},
                          {"cptp", cptp.cptp},
                          {"min_choi_eigenvalue", cptp.min_choi_eigenvalue},
                          {"trace_defect", cptp.trace_defect},
                          {"hermiticity_defect", cptp.hermiticity_defect}});
  }
  report["map_checks"] = std::move(map_checks);

  if (config.witness_state) {
    const auto witness_rho = models::make_density(*config.witness_state);
    const auto witness_result =
        generators::propagate(config.model.system, options, witness_rho, times);
    const auto witness =
        models::nonmarkovianity_witness(result.schrodinger, witness_result.schrodinger);
    json intervals = json::array();
    for (const auto& iv : witness.increase_intervals) {
      intervals.push_back(
          {{"t_start", iv.t_start}, {"t_end", iv.t_end}, {"increase", iv.increase}});
    }
    report["witness"] = {{"total_increase", witness.total_increase},
                         {"monotone", witness.monotone},
                         {"increase_intervals", std::move(intervals)}};
  }

  report["quadrature"] = {{"evaluations", result.quadrature.evaluations},
                          {"panels", result.quadrature.panels},
                          {"worst_error", result.quadrature.worst_error},
                          {"tail_bound", result.quadrature.tail_bound}};
  if (!result.grouping_diagnostic.empty()) {
    report["grouping_diagnostic"] = result.grouping_diagnostic;
  }

  const auto t_end = std::chrono::steady_clock::now();
  const auto ms = [](auto a, auto b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
  };
  report["timings_ms"] = {{"propagate", ms(t_start, t_propagated)},
                          {"total", ms(t_start, t_end)}};

  artifacts.report_json =
      report_path ? *report_path : dir / (config.output_stem + "_report.json");
  std::ofstream out(artifacts.report_json);
  if (!out) {
    throw std::runtime_error("cannot write " + artifacts.report_json.string());
  }
  out << report.dump(2) << '\n';
  if (result_out != nullptr) {
    *result_out = result;
  }
  return artifacts;
}

}  // namespace

RunArtifacts run(const RunConfig& config, const std::filesystem::path& out_dir,
                 const std::optional<std::filesystem::path>& report_path) {
  return run_collecting(config, out_dir, report_path, nullptr);
}

CompareArtifacts compare(const std::vector<RunConfig>& configs,
                         const std::filesystem::path& out_dir) {
  if (configs.size() < 2) {
    throw ConfigError("compare needs at least two configurations");
  }
  const RunConfig& base = configs.front();
  std::set<std::string> stems;
  for (const auto& config : configs) {
    if (config.model_kind != base.model_kind || config.delta_omega != base.delta_omega) {
      throw ConfigError("compare: configurations must share the same model");
    }
    if (bath_echo(config.model.bath) != bath_echo(base.model.bath)) {
      throw ConfigError("compare: configurations must share the same bath");
    }
    if (config.grid.t_min != base.grid.t_min || config.grid.t_max != base.grid.t_max ||
        config.grid.n_points != base.grid.n_points || config.grid.spacing != base.grid.spacing) {
      throw ConfigError("compare: configurations must share the same time grid");
    }
    if (config.initial_state.rows() != base.initial_state.rows() ||
        (config.initial_state - base.initial_state).norm() > 1e-15) {
      throw ConfigError("compare: configurations must share the same initial state");
    }
    if (config.observables != base.observables) {
      throw ConfigError("compare: configurations must share the same observables");
    }
    if (!stems.insert(config.output_stem).second) {
      throw ConfigError("compare: duplicate output stem \"" + config.output_stem +
                        "\"; set distinct output.stem values");
    }
  }

  std::filesystem::create_directories(out_dir);
  CompareArtifacts artifacts;
  artifacts.schrodinger_csv = out_dir / "compare_schrodinger.csv";
  artifacts.interaction_csv = out_dir / "compare_interaction.csv";
  std::ofstream schrodinger(artifacts.schrodinger_csv);
  std::ofstream interaction(artifacts.interaction_csv);
  if (!schrodinger || !interaction) {
    throw std::runtime_error("cannot write comparison CSVs under " + out_dir.string());
  }
  schrodinger << "method," << observable_header(base.observables) << '\n';
  interaction << "method," << observable_header(base.observables) << '\n';

  for (const auto& config : configs) {
    generators::PropagationResult result;
    artifacts.members.push_back(run_collecting(config, out_dir, std::nullopt, &result));
    const std::string prefix = generators::to_string(config.method) + ",";
    append_series_rows(schrodinger, result.schrodinger, config.observables, prefix);
    append_series_rows(interaction, result.interaction, config.observables, prefix);
  }
  return artifacts;
}

std::string check(const RunConfig& config) {
  std::ostringstream out;
  const Eigen::Index dim = config.model.system.hamiltonian.rows();
  out << "model: " << config.model_kind << " (dimension " << dim << ")";
  if (config.model_kind == "qutrit-boson") {
    out << ", delta_omega " << config.delta_omega;
  }
  out << '\n';
  const auto& sd = config.model.bath.spectral;
  out << "bath: " << bath::to_string(sd.kind) << ", alpha " << sd.alpha;
  if (bath::has_cutoff(sd)) {
    out << ", omega_c " << sd.omega_c;
  }
  out << ", T_eff " << config.model.bath.T_eff << '\n';
  out << "method: " << generators::to_string(config.method) << '\n';

  const auto dec = generators::bohr_decompose(config.model.system);
  out << "bohr frequencies:";
  for (double w : dec.frequencies) {
    out << ' ' << w;
  }
  out << '\n';
  if (config.method == generators::EvolutionMethod::davies_local) {
    const auto grouping = generators::group_frequencies(dec.frequencies, config.gap_threshold);
    out << "frequency clusters:";
    for (std::size_t g = 0; g < grouping.groups.size(); ++g) {
      out << " [mean " << grouping.means[g] << ", size " << grouping.groups[g].size() << "]";
    }
    out << '\n';
    if (!grouping.diagnostic.empty()) {
      out << "grouping note: " << grouping.diagnostic << '\n';
    }
  }
  out << "time grid: " << config.grid.n_points << " points, " << config.grid.spacing << ", ["
      << config.grid.t_min << ", " << config.grid.t_max << "]\n";
  out << "initial state: " << config.initial_state_label << '\n';
  if (config.witness_state) {
    out << "witness state: " << config.witness_state_label << '\n';
  }
  out << "observables:";
  for (const auto& [r, c] : config.observables) {
    out << " (" << r << "," << c << ")";
  }
  out << '\n';
  out << "output: dir " << config.output_dir << ", stem " << config.output_stem << '\n';
  return out.str();
}

}  // namespace rcme::cli
