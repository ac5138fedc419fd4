#include "ito/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ito/errors.hpp"
#include "ito/process.hpp"

namespace ito {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string token;
  std::istringstream in(value);
  while (std::getline(in, token, ',')) {
    token = trim(token);
    if (!token.empty()) items.push_back(token);
  }
  return items;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw UsageError("config: '" + key + "' expects a number, got '" + value + "'");
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw UsageError("config: '" + key + "' expects an integer, got '" + value + "'");
  }
}

// "kmin:kmax" or "[kmin, kmax]".
void parse_levels(ExperimentConfig& config, const std::string& value) {
  std::string v = value;
  v.erase(std::remove_if(v.begin(), v.end(),
                         [](char c) { return c == '[' || c == ']' || c == ' '; }),
          v.end());
  const auto sep = v.find_first_of(":,");
  if (sep == std::string::npos) {
    throw UsageError("config: 'levels' expects kmin:kmax, got '" + value + "'");
  }
  config.level_min = static_cast<int>(parse_long("levels", v.substr(0, sep)));
  config.level_max = static_cast<int>(parse_long("levels", v.substr(sep + 1)));
}

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {
      "convergence", "l2-decay",   "uniqueness", "isometry",
      "martingale",  "continuity", "ito-lemma"};
  return names;
}

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("config: seed expects a decimal or 0x-hex integer, got '" +
                     text + "'");
  }
}

void apply_config_entry(ExperimentConfig& config, const std::string& key,
                        const std::string& value) {
  if (key == "seed") {
    config.master_seed = parse_seed(value);
  } else if (key == "horizon") {
    config.horizon = parse_double(key, value);
  } else if (key == "eval_time") {
    config.eval_time = parse_double(key, value);
  } else if (key == "paths") {
    const long n = parse_long(key, value);
    if (n < 0) throw UsageError("config: 'paths' must be non-negative");
    config.paths = static_cast<std::size_t>(n);
  } else if (key == "levels") {
    parse_levels(config, value);
  } else if (key == "integrand") {
    config.integrand = value;
  } else if (key == "const_value") {
    config.const_value = parse_double(key, value);
  } else if (key == "checks") {
    config.checks = split_list(value);
  } else if (key == "truncation") {
    config.truncation = value;
  } else if (key == "threshold_uniqueness") {
    config.threshold_uniqueness = parse_double(key, value);
  } else if (key == "threshold_convergence") {
    config.threshold_convergence = parse_double(key, value);
  } else if (key == "out") {
    config.out_dir = value;
  } else if (key == "threads") {
    config.threads = static_cast<int>(parse_long(key, value));
  } else {
    throw UsageError("config: unknown key '" + key + "'");
  }
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot open " + path.string());
  ExperimentConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config: line " + std::to_string(line_no) +
                       " is not 'key = value'");
    }
    apply_config_entry(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

void validate(const ExperimentConfig& config) {
  if (!(config.horizon > 0.0) || !std::isfinite(config.horizon)) {
    throw UsageError("config: 'horizon' must be positive and finite");
  }
  if (config.paths < 2) throw UsageError("config: 'paths' must be >= 2");
  if (config.level_min < 1) throw UsageError("config: 'levels' needs kmin >= 1");
  if (config.level_max < config.level_min) {
    throw UsageError("config: 'levels' needs kmax >= kmin");
  }
  if (config.level_max > 24) throw UsageError("config: 'levels' kmax capped at 24");

  // eval_time must be horizon / 2^j so level grids on [0, eval_time]
  // land bit-exactly on the ensemble grid.
  bool aligned = false;
  for (int j = 0; j <= 40; ++j) {
    if (std::ldexp(config.eval_time, j) == config.horizon) {
      aligned = true;
      break;
    }
  }
  if (!aligned) {
    throw UsageError("config: 'eval_time' must equal horizon / 2^j");
  }

  const auto& catalog = integrand_catalog();
  const auto entry = std::find_if(catalog.begin(), catalog.end(),
                                  [&](const IntegrandInfo& info) {
                                    return info.name == config.integrand;
                                  });
  if (entry == catalog.end()) {
    throw UsageError("config: unknown integrand '" + config.integrand + "'");
  }
  // The isometry check's hypothesis needs the h2 claim; reject the
  // combination before any output is written.
  if (!entry->h2 && std::find(config.checks.begin(), config.checks.end(),
                              "isometry") != config.checks.end()) {
    throw UsageError("config: the isometry check needs an h2 integrand; '" +
                     config.integrand + "' does not claim it");
  }

  if (config.truncation != "auto" && config.truncation != "none") {
    const double coef = parse_double("truncation", config.truncation);
    if (!(coef > 0.0)) throw UsageError("config: 'truncation' coefficient must be > 0");
  }
  for (const std::string& check : config.checks) {
    if (std::find(known_checks().begin(), known_checks().end(), check) ==
        known_checks().end()) {
      throw UsageError("config: unknown check '" + check + "'");
    }
  }
  if (config.checks.empty()) throw UsageError("config: no checks selected");
  if (!(config.threshold_uniqueness > 0.0) || !(config.threshold_convergence > 0.0)) {
    throw UsageError("config: thresholds must be positive");
  }
  if (config.threads < 0) throw UsageError("config: 'threads' must be >= 0");
}

}  // namespace ito
