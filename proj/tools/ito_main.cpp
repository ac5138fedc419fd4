#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ito/config.hpp"
#include "ito/errors.hpp"
#include "ito/runner.hpp"
#include "ito/version.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string seed;
  std::string out_dir;
  std::string levels;
  long paths = -1;
  long threads = -1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "config file (key = value lines)");
    cmd->add_option("--seed", seed, "master seed (decimal or 0x-hex)");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--levels", levels, "dyadic level range kmin:kmax");
    cmd->add_option("--paths", paths, "ensemble size");
    cmd->add_option("--threads", threads, "worker threads (1 = serial)");
  }

  ito::ExperimentConfig build() const {
    ito::ExperimentConfig config;
    if (!config_path.empty()) config = ito::parse_config_file(config_path);
    if (!seed.empty()) ito::apply_config_entry(config, "seed", seed);
    if (!out_dir.empty()) ito::apply_config_entry(config, "out", out_dir);
    if (!levels.empty()) ito::apply_config_entry(config, "levels", levels);
    if (paths >= 0) ito::apply_config_entry(config, "paths", std::to_string(paths));
    if (threads >= 0) {
      ito::apply_config_entry(config, "threads", std::to_string(threads));
    }
    return config;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("ito ") + ito::kVersion +
               " - stochastic integral construction and verification"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  std::string checks;
  CLI::App* run_cmd = app.add_subcommand("run", "execute the selected checks");
  run_flags.attach(run_cmd);
  run_cmd->add_option("--check", checks, "comma-separated check list");

  CLI::App* list_cmd =
      app.add_subcommand("list-integrands", "print the integrand catalog");

  CommonFlags dump_flags;
  CLI::App* dump_cmd =
      app.add_subcommand("dump-paths", "write sampled Wiener paths as CSV");
  dump_flags.attach(dump_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list_cmd->parsed()) {
      std::cout << ito::list_integrands_text();
      return 0;
    }
    if (dump_cmd->parsed()) {
      ito::dump_paths(dump_flags.build());
      return 0;
    }
    ito::ExperimentConfig config = run_flags.build();
    if (!checks.empty()) ito::apply_config_entry(config, "checks", checks);
    const ito::RunOutcome outcome = ito::run_experiment(config);
    for (const ito::CheckResult& result : outcome.results) {
      std::cout << (result.passed ? "PASS " : "FAIL ") << result.name
                << " statistic=" << result.statistic
                << " tolerance=" << result.tolerance << '\n';
    }
    std::cout << (outcome.status == 0 ? "all checks passed"
                                      : "some checks FAILED")
              << " (outputs in " << config.out_dir << ")\n";
    return outcome.status;
  } catch (const ito::UsageError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
