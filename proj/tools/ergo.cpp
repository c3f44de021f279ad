#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ergo/scenario.hpp"

namespace {

ergo::Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ergo::ValidationError("cannot open " + path);
  try {
    return ergo::Json::parse(in);
  } catch (const ergo::Json::parse_error& e) {
    throw ergo::ValidationError(std::string("cannot parse ") + path + ": " + e.what());
  }
}

std::string default_out_dir() {
  const char* env = std::getenv("ERGO_OUT_DIR");
  return env && *env ? env : ".";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ergo: finite-dimensional ergodic-theory scenarios"};
  app.require_subcommand(1);

  std::string run_file;
  ergo::RunOptions options;
  options.out_dir = default_out_dir();
  int horizon = 0;
  double epsilon = 0.0;
  auto* run = app.add_subcommand("run", "execute a scenario file and write its report");
  run->add_option("file", run_file, "scenario JSON file")->required();
  run->add_option("--out", options.out_dir, "output directory for report and CSV files");
  auto* horizon_opt = run->add_option("--horizon", horizon, "override scan/mean horizons");
  auto* epsilon_opt = run->add_option("--epsilon", epsilon, "override analysis epsilons");
  run->add_option("--seed", options.seed, "seed recorded in the report provenance");

  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "check a scenario file without running it");
  validate->add_option("file", validate_file, "scenario JSON file")->required();

  auto* list = app.add_subcommand("list-examples", "show the named systems");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      if (*horizon_opt) options.horizon = horizon;
      if (*epsilon_opt) options.epsilon = epsilon;
      const ergo::Json scenario = load_json(run_file);
      const ergo::Json report = ergo::run_scenario(scenario, options);
      std::filesystem::create_directories(options.out_dir);
      const std::string name = report.at("scenario").get<std::string>();
      std::string stem;
      for (char c : name) stem.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
      const auto path = std::filesystem::path(options.out_dir) / (stem + "_report.json");
      std::ofstream out(path);
      out << report.dump(2) << '\n';
      std::cout << report.dump(2) << '\n';
      std::cerr << "report written to " << path.string() << '\n';
      return 0;
    }
    if (*validate) {
      const ergo::Json scenario = load_json(validate_file);
      const auto diagnostics = ergo::validate_scenario(scenario);
      for (const std::string& d : diagnostics) std::cout << d << '\n';
      if (!diagnostics.empty()) return 2;
      std::cout << "ok\n";
      return 0;
    }
    if (*list) {
      for (const std::string& line : ergo::list_examples()) std::cout << line << '\n';
      return 0;
    }
  } catch (const ergo::HypothesisError& e) {
    std::cerr << "hypothesis failure: " << e.what() << '\n';
    return 3;
  } catch (const ergo::ValidationError& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
