// run.hpp — JSON-configured simulation runs, comparisons, and config checks.
#pragma once

#include "rcme/analysis.hpp"
#include "rcme/generators.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rcme::cli {

// Raised for malformed, unknown, or physically incompatible configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TimeGrid {
  double t_min{0.0};
  double t_max{10.0};
  int n_points{101};
  std::string spacing{"linear"};  // "linear" or "log"
};

// Strictly ascending sample times; log spacing is geometric and requires
// t_min > 0.
std::vector<double> make_time_grid(const TimeGrid& grid);

struct RunConfig {
  std::string model_kind;  // "spin-boson" or "qutrit-boson"
  double delta_omega{0.0};
  models::Model model;
  generators::EvolutionMethod method{generators::EvolutionMethod::star};
  TimeGrid grid;
  linalg::Matrix initial_state;
  std::string initial_state_label;
  std::optional<linalg::Matrix> witness_state;
  std::string witness_state_label;
  std::vector<std::pair<int, int>> observables;  // matrix elements to record
  double gap_threshold{0.0};                     // davies-local clustering
  quad::QuadratureConfig quadrature;
  std::string output_dir{"."};
  std::string output_stem;  // defaults to "<model>-<method>"
};

// Parses and fully validates a configuration document; origin names the
// source in error messages. Unknown keys are rejected at every level.
RunConfig parse_config(const std::string& text, const std::string& origin);
RunConfig load_config(const std::filesystem::path& path);

struct RunArtifacts {
  std::filesystem::path schrodinger_csv;
  std::filesystem::path interaction_csv;
  std::filesystem::path report_json;
};

// Propagates the configured model, writes one CSV of observable tracks per
// picture plus a JSON report (per-time state diagnostics, map checks on a
// few grid points, optional trace-distance witness, quadrature effort).
// out_dir overrides config.output_dir when non-empty.
RunArtifacts run(const RunConfig& config, const std::filesystem::path& out_dir = {},
                 const std::optional<std::filesystem::path>& report_path = std::nullopt);

struct CompareArtifacts {
  std::filesystem::path schrodinger_csv;
  std::filesystem::path interaction_csv;
  std::vector<RunArtifacts> members;
};

// Runs every configuration (identical model, bath, grid, initial state and
// observables required) and writes combined per-picture CSVs with a leading
// method column next to the individual artifacts.
CompareArtifacts compare(const std::vector<RunConfig>& configs,
                         const std::filesystem::path& out_dir);

// Validates a configuration and summarises the derived quantities (Bohr
// frequencies, grouping, grid) without propagating anything.
std::string check(const RunConfig& config);

}  // namespace rcme::cli
