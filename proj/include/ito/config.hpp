#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ito {

// One experiment, fully determined by these fields: every output file is
// a pure function of the config. Parsed from a flat `key = value` file
// (diffable, archivable) with CLI flags layered on top.
struct ExperimentConfig {
  std::uint64_t master_seed = 1;
  double horizon = 1.0;
  double eval_time = 1.0;  // t; must be horizon / 2^j for some j >= 0
  std::size_t paths = 2000;
  int level_min = 4;
  int level_max = 10;
  std::string integrand = "wiener";
  double const_value = 1.0;  // parameter for the "const" integrand
  std::vector<std::string> checks = {"convergence", "l2-decay",   "uniqueness",
                                     "isometry",    "martingale", "continuity",
                                     "ito-lemma"};
  std::string truncation = "auto";  // auto | none | <coef>
  double threshold_uniqueness = 0.05;
  double threshold_convergence = 0.02;
  std::string out_dir = "out";
  int threads = 0;  // 0 = library default; 1 = serial reference
};

// All recognized check names, in canonical execution order.
const std::vector<std::string>& known_checks();

// Parses `key = value` lines; '#' starts a comment, blank lines ignored.
// Unknown keys are a usage error (catch config typos early).
ExperimentConfig parse_config_file(const std::filesystem::path& path);

// Applies one key=value pair (used for both file lines and flag
// overrides).
void apply_config_entry(ExperimentConfig& config, const std::string& key,
                        const std::string& value);

// Field-level validation; throws UsageError with a message naming the
// offending key.
void validate(const ExperimentConfig& config);

// Seed accepted as decimal or 0x-prefixed hex.
std::uint64_t parse_seed(const std::string& text);

}  // namespace ito
