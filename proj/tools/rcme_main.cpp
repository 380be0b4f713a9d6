// rcme_main.cpp — command-line driver: simulate, compare, check.
#include "rcme/run.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitInvariant = 4;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Finite-time cumulant and Davies evolutions of small open quantum systems"};
  app.require_subcommand(1);

  std::string sim_config;
  std::string sim_out;
  std::string sim_report;
  auto* simulate =
      app.add_subcommand("simulate", "Run one configuration; write per-picture CSVs and a report");
  simulate->add_option("config", sim_config, "JSON configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--out", sim_out, "Output directory (overrides output.dir)");
  simulate->add_option("--report", sim_report, "Report path (default <out>/<stem>_report.json)");

  std::vector<std::string> cmp_configs;
  std::string cmp_out = ".";
  auto* compare = app.add_subcommand(
      "compare", "Run several configurations on one grid; write combined method-keyed CSVs");
  compare->add_option("configs", cmp_configs, "JSON configuration files")
      ->required()
      ->check(CLI::ExistingFile);
  compare->add_option("--out", cmp_out, "Output directory");

  std::string check_config;
  auto* check =
      app.add_subcommand("check", "Validate a configuration and print derived quantities");
  check->add_option("config", check_config, "JSON configuration file")
      ->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      const auto config = rcme::cli::load_config(sim_config);
      const std::optional<std::filesystem::path> report =
          sim_report.empty() ? std::nullopt
                             : std::optional<std::filesystem::path>(sim_report);
      const auto artifacts = rcme::cli::run(config, sim_out, report);
      std::cout << "wrote " << artifacts.schrodinger_csv.string() << '\n'
                << "wrote " << artifacts.interaction_csv.string() << '\n'
                << "wrote " << artifacts.report_json.string() << '\n';
    } else if (compare->parsed()) {
      std::vector<rcme::cli::RunConfig> configs;
      configs.reserve(cmp_configs.size());
      for (const auto& path : cmp_configs) {
        configs.push_back(rcme::cli::load_config(path));
      }
      const auto artifacts = rcme::cli::compare(configs, cmp_out);
      std::cout << "wrote " << artifacts.schrodinger_csv.string() << '\n'
                << "wrote " << artifacts.interaction_csv.string() << '\n';
      for (const auto& member : artifacts.members) {
        std::cout << "wrote " << member.report_json.string() << '\n';
      }
    } else if (check->parsed()) {
      std::cout << rcme::cli::check(rcme::cli::load_config(check_config));
    }
  } catch (const rcme::cli::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const rcme::quad::QuadratureError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const rcme::models::InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
