// horolab <command> --config <path> [--out <prefix>] [--seed <u64>]
//
// Writes <prefix>.json (and <prefix>.csv for grid commands). Exit codes:
// 0 ok, 2 config error, 3 numerical failure. Failures print one JSON object
// on stderr and leave no output files behind.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "horolab/errors.hpp"
#include "horolab/experiment.hpp"

namespace {

int fail(int code, const std::string& kind, const std::string& message) {
  nlohmann::json err{{"error", kind}, {"message", message}, {"exit_code", code}};
  std::cerr << err.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"horolab: horospherical averages, nilsequences and diophantine checks"};
  std::string command, config_path, out;
  std::optional<std::uint64_t> seed;
  app.add_option("command", command, "experiment to run")
      ->required()
      ->check(CLI::IsMember(horolab::experiment_commands()));
  app.add_option("--config", config_path, "flat JSON config file")->required();
  app.add_option("--out", out, "output prefix (overrides the config 'out' key)");
  app.add_option("--seed", seed, "64-bit seed (overrides the config 'seed' key)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(2, "usage", e.what());
  }

  horolab::ExperimentConfig config;
  try {
    std::ifstream in(config_path);
    if (!in) throw horolab::ConfigError("cannot open config file " + config_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw horolab::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    config = horolab::ExperimentConfig::from_json(command, j);
    if (seed) config.set_seed(*seed);
  } catch (const horolab::ConfigError& e) {
    return fail(2, "config", e.what());
  }
  if (out.empty()) out = config.text("out");
  if (out.empty()) out = "horolab_" + command;

  try {
    horolab::write_artifacts(horolab::run_experiment(config), out);
  } catch (const horolab::ConfigError& e) {
    return fail(2, "config", e.what());
  } catch (const horolab::NumericalFailure& e) {
    return fail(3, "numerical", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(2, "precondition", e.what());
  } catch (const std::domain_error& e) {
    return fail(2, "precondition", e.what());
  } catch (const std::exception& e) {
    return fail(3, "runtime", e.what());
  }
  return 0;
}
