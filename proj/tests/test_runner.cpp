#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ito/config.hpp"
#include "ito/errors.hpp"
#include "ito/runner.hpp"

using namespace ito;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

ExperimentConfig tiny_config(const std::string& out_dir) {
  ExperimentConfig config;
  config.master_seed = 9;
  config.paths = 60;
  config.level_min = 3;
  config.level_max = 5;
  config.integrand = "wiener";
  config.checks = {"convergence"};
  config.threshold_convergence = 0.5;
  config.out_dir = out_dir;
  return config;
}

}  // namespace

TEST_CASE("config file parsing and overrides") {
  const fs::path dir = fs::temp_directory_path() / "ito_test_cfg";
  fs::create_directories(dir);
  const fs::path file = dir / "a.cfg";
  {
    std::ofstream out(file);
    out << "# comment\n"
        << "seed = 0x10\n"
        << "paths = 123\n"
        << "levels = [2, 6]\n"
        << "integrand = sin-of-w\n"
        << "checks = isometry, martingale\n"
        << "eval_time = 0.5\n";
  }
  const ExperimentConfig config = parse_config_file(file);
  CHECK(config.master_seed == 16);
  CHECK(config.paths == 123);
  CHECK(config.level_min == 2);
  CHECK(config.level_max == 6);
  CHECK(config.integrand == "sin-of-w");
  CHECK(config.checks == std::vector<std::string>{"isometry", "martingale"});
  CHECK(config.eval_time == 0.5);
  validate(config);

  ExperimentConfig copy = config;
  apply_config_entry(copy, "levels", "4:8");
  CHECK(copy.level_min == 4);
  CHECK(copy.level_max == 8);
  CHECK_THROWS_AS(apply_config_entry(copy, "bogus_key", "1"), UsageError);
  CHECK_THROWS_AS(apply_config_entry(copy, "paths", "abc"), UsageError);
  CHECK(parse_seed("0xff") == 255);
  CHECK_THROWS_AS(parse_seed("12monkeys"), UsageError);
}

TEST_CASE("config validation rejects bad ranges") {
  ExperimentConfig config;
  config.level_min = 6;
  config.level_max = 4;
  CHECK_THROWS_AS(validate(config), UsageError);
  config.level_max = 6;
  config.eval_time = 0.3;  // not horizon / 2^j
  CHECK_THROWS_AS(validate(config), UsageError);
  config.eval_time = 0.25;
  validate(config);
  config.integrand = "unknown";
  CHECK_THROWS_AS(validate(config), UsageError);
  config.integrand = "wiener";
  config.checks = {"not-a-check"};
  CHECK_THROWS_AS(validate(config), UsageError);
  // Inapplicable combination caught before anything is written.
  config.checks = {"isometry"};
  config.integrand = "exp-w-squared";
  config.eval_time = 0.5;
  CHECK_THROWS_AS(validate(config), UsageError);
}

TEST_CASE("run_experiment writes summary, diagnostics and manifest") {
  const fs::path dir = fs::temp_directory_path() / "ito_test_run";
  fs::remove_all(dir);
  const ExperimentConfig config = tiny_config((dir / "out").string());
  const RunOutcome outcome = run_experiment(config);
  CHECK(outcome.status == 0);
  REQUIRE(outcome.results.size() == 1);
  CHECK(outcome.results[0].passed);
  CHECK(fs::exists(dir / "out" / "summary.csv"));
  CHECK(fs::exists(dir / "out" / "manifest.json"));
  CHECK(fs::exists(dir / "out" / "convergence_wiener.csv"));
  CHECK(fs::exists(dir / "out" / "trace_wiener.csv"));

  const std::string summary = slurp(dir / "out" / "summary.csv");
  CHECK(summary.find("name,statistic,tolerance,passed") == 0);
  CHECK(summary.find("convergence[wiener]") != std::string::npos);

  const std::string trace = slurp(dir / "out" / "trace_wiener.csv");
  CHECK(trace.find("level,grid_size,value") == 0);
}

TEST_CASE("identical configs produce bit-identical outputs") {
  const fs::path dir = fs::temp_directory_path() / "ito_test_repro";
  fs::remove_all(dir);
  ExperimentConfig config = tiny_config((dir / "a").string());
  config.checks = {"convergence", "isometry", "ito-lemma"};
  run_experiment(config);
  config.out_dir = (dir / "b").string();
  run_experiment(config);
  for (const auto& entry : fs::directory_iterator(dir / "a")) {
    const fs::path other = dir / "b" / entry.path().filename();
    REQUIRE(fs::exists(other));
    CHECK(slurp(entry.path()) == slurp(other));
  }
}

TEST_CASE("zero integrand yields all-zero diagnostics and passes") {
  const fs::path dir = fs::temp_directory_path() / "ito_test_zero";
  fs::remove_all(dir);
  ExperimentConfig config = tiny_config((dir / "out").string());
  config.integrand = "const";
  config.const_value = 0.0;
  const RunOutcome outcome = run_experiment(config);
  CHECK(outcome.status == 0);
  for (const auto& row : outcome.results[0].diagnostics.rows) {
    CHECK(row[2] == 0.0);  // every exceedance estimate
    CHECK(row[4] == 0.0);  // every ky_fan
  }
}

TEST_CASE("list_integrands_text covers the catalog with flags") {
  const std::string text = list_integrands_text();
  CHECK(text.find("const") != std::string::npos);
  CHECK(text.find("wiener") != std::string::npos);
  CHECK(text.find("sin-of-w") != std::string::npos);
  CHECK(text.find("exp-w-squared") != std::string::npos);
  CHECK(text.find("false") != std::string::npos);  // the non-h2 row
}

TEST_CASE("dump_paths writes one CSV per path") {
  const fs::path dir = fs::temp_directory_path() / "ito_test_dump";
  fs::remove_all(dir);
  ExperimentConfig config = tiny_config((dir / "out").string());
  config.paths = 3;
  dump_paths(config);
  for (int i = 0; i < 3; ++i) {
    std::ostringstream name;
    name << "path_0000" << i << ".csv";
    const fs::path file = dir / "out" / name.str();
    REQUIRE(fs::exists(file));
    const std::string body = slurp(file);
    CHECK(body.find("t,w") == 0);
    CHECK(body.find("0,0\n") != std::string::npos);
  }
}
