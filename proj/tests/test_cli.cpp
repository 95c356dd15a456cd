#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "horolab/experiment.hpp"

using namespace horolab;
namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("horolab_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const fs::path& err) {
  const std::string cmd = std::string(HOROLAB_CLI_PATH) + " " + args + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config round-trips through JSON") {
  for (const auto& cmd : experiment_commands()) {
    const ExperimentConfig c = ExperimentConfig::from_json(cmd, nlohmann::json::object());
    const ExperimentConfig back = ExperimentConfig::from_json(cmd, c.to_json());
    CHECK(back == c);
    CHECK(c.to_json().size() == config_keys(cmd).size());
    const ExperimentConfig again = ExperimentConfig::from_json(cmd, nlohmann::json::parse(c.to_json().dump()));
    CHECK(again == c);
  }
  ExperimentConfig c = ExperimentConfig::from_json("decay", {{"R_min", 8}, {"alpha", 2}});
  CHECK(c.number("R_min") == 8.0);
  CHECK(c.number("alpha") == 2.0);
  c.set_seed(17);
  CHECK(c.seed() == 17);
  CHECK(ExperimentConfig::from_json("decay", c.to_json()) == c);
}

TEST_CASE("config rejects bad content") {
  CHECK_THROWS_AS(ExperimentConfig::from_json("decay", {{"no_such_key", 1}}), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json("decay", {{"R_min", "sixteen"}}), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json("decay", {{"command", "vdc"}}), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json("nope", nlohmann::json::object()), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_json("nondiv", {{"group", "sl4"}}), ConfigError);
  CHECK_NOTHROW(ExperimentConfig::from_json("decay", {{"command", "decay"}}));
}

TEST_CASE("in-process runs") {
  const Artifacts g = run_experiment(ExperimentConfig::from_json("gamma", nlohmann::json::object()));
  CHECK(g.report["result"]["gamma_def_value"].get<double>() == doctest::Approx(0.0027648).epsilon(1e-7));
  CHECK(g.report["result"]["discrepancy_flag"].get<bool>());
  CHECK_FALSE(g.csv.has_value());

  const Artifacts a = run_experiment(ExperimentConfig::from_json("alpha", {{"base_point", {1, 0, 0, 1}}}));
  CHECK(a.report["result"]["alpha_values"][0].get<double>() == doctest::Approx(1.0));
  CHECK(a.report["result"]["alpha_values"][1].get<double>() == doctest::Approx(1.0));

  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("CLI output is deterministic") {
  Scratch s;
  const std::string cfg =
      s.write("decay.json", R"({"R_min": 16, "R_max": 256, "character": "bracket", "seed": 5})");
  REQUIRE(run_cli("decay --config " + cfg + " --out " + (s.dir / "one").string(), s.dir / "e1") == 0);
  REQUIRE(run_cli("decay --config " + cfg + " --out " + (s.dir / "two").string(), s.dir / "e2") == 0);
  const std::string one = slurp(s.dir / "one.csv");
  CHECK(one.rfind("# horolab-csv-v1", 0) == 0);
  CHECK(one == slurp(s.dir / "two.csv"));
  CHECK(slurp(s.dir / "one.json") == slurp(s.dir / "two.json"));
  const auto report = nlohmann::json::parse(slurp(s.dir / "one.json"));
  CHECK(report["command"] == "decay");
  CHECK(ExperimentConfig::from_json("decay", report["config"]).seed() == 5);
}

TEST_CASE("CLI exit codes leave no partial files") {
  Scratch s;
  const fs::path out = s.dir / "bad";
  auto no_outputs = [&] {
    for (const auto& entry : fs::directory_iterator(s.dir)) {
      const std::string name = entry.path().filename().string();
      CHECK_MESSAGE(name.rfind("bad", 0) != 0, name);
    }
  };
  const std::string unknown = s.write("unknown.json", R"({"R_min": 16, "bogus": 1})");
  CHECK(run_cli("decay --config " + unknown + " --out " + out.string(), s.dir / "e") == 2);
  const auto err = nlohmann::json::parse(slurp(s.dir / "e"));
  CHECK(err["exit_code"] == 2);
  no_outputs();

  const std::string garbage = s.write("garbage.json", "{not json");
  CHECK(run_cli("decay --config " + garbage + " --out " + out.string(), s.dir / "e") == 2);
  CHECK(run_cli("decay --config " + (s.dir / "missing.json").string(), s.dir / "e") == 2);
  CHECK(run_cli("nosuch --config " + unknown, s.dir / "e") == 2);
  const std::string small_r = s.write("small.json", R"({"R": 0.5})");
  CHECK(run_cli("avg --config " + small_r + " --out " + out.string(), s.dir / "e") == 2);
  no_outputs();

  // quadrature that cannot converge within its node budget
  const std::string starved = s.write(
      "starved.json", R"({"R_min": 16, "R_max": 512, "character": "bracket", "target_rel_err": 1e-14, "max_nodes": 64})");
  CHECK(run_cli("decay --config " + starved + " --out " + out.string(), s.dir / "e") == 3);
  CHECK(nlohmann::json::parse(slurp(s.dir / "e"))["exit_code"] == 3);
  no_outputs();
}

TEST_CASE("CLI seed flag overrides the config") {
  Scratch s;
  const std::string cfg = s.write("coeff.json", R"({"n_samples": 5000, "t_min": 0, "t_max": 3, "seed": 1})");
  REQUIRE(run_cli("coeff --config " + cfg + " --seed 9 --out " + (s.dir / "c").string(), s.dir / "e") == 0);
  const auto report = nlohmann::json::parse(slurp(s.dir / "c.json"));
  CHECK(report["config"]["seed"] == 9);
  CHECK(fs::exists(s.dir / "c.csv"));
}
