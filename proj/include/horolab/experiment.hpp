#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "horolab/averages.hpp"

namespace horolab {

// Malformed or unknown configuration content (exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Flat JSON record of one run. Every key allowed for the command is present
// after parsing (defaults filled in), so to_json() / from_json() round-trip.
class ExperimentConfig {
 public:
  // Throws ConfigError for an unknown command, unknown keys, or values of the
  // wrong type. An optional "command" key must agree with `command`.
  static ExperimentConfig from_json(const std::string& command, const nlohmann::json& j);

  const std::string& command() const { return command_; }
  nlohmann::json to_json() const { return params_; }

  double number(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  std::uint64_t seed() const;
  bool flag(const std::string& key) const;
  std::string text(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;

  void set_seed(std::uint64_t seed);

  friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    return a.command_ == b.command_ && a.params_ == b.params_;
  }

 private:
  std::string command_;
  nlohmann::json params_;
};

const std::vector<std::string>& experiment_commands();
// Allowed keys of a command, in output order.
std::vector<std::string> config_keys(const std::string& command);

struct Artifacts {
  nlohmann::json report;
  std::optional<std::string> csv;
};

// Runs one command. Library precondition failures propagate as
// std::invalid_argument / std::domain_error, convergence failures as
// NumericalFailure.
Artifacts run_experiment(const ExperimentConfig& config);

// <prefix>.json and, when present, <prefix>.csv. Both go to temporary names
// first and are renamed only after every write succeeded.
void write_artifacts(const Artifacts& a, const std::string& prefix);

// One randomized Van der Corput configuration.
struct VdcConfigSample {
  TestFunction f;
  NilCharacter psi = NilCharacter::trivial();
  SquareMatrix x{2};
  double R = 0.0;
  double r = 0.0;
};
VdcConfigSample random_vdc_config(std::uint64_t seed, double R_lo, double R_hi);

// Shared number formatting for CSV cells.
std::string format_double(double v);

}  // namespace horolab
