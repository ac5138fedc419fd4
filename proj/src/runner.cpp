#include "ito/runner.hpp"

#include <omp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "ito/csv.hpp"
#include "ito/errors.hpp"
#include "ito/version.hpp"

#include "json.hpp"

namespace ito {
namespace {

namespace fs = std::filesystem;

// j with eval_time * 2^j == horizon (validated earlier).
int alignment_exponent(const ExperimentConfig& config) {
  for (int j = 0; j <= 40; ++j) {
    if (std::ldexp(config.eval_time, j) == config.horizon) return j;
  }
  throw UsageError("config: 'eval_time' must equal horizon / 2^j");
}

TruncationSchedule truncation_from_config(const ExperimentConfig& config,
                                          const IntegrandFunctional& f) {
  if (config.truncation == "auto") return TruncationSchedule::auto_for(f);
  if (config.truncation == "none") return TruncationSchedule::none();
  return TruncationSchedule::linear(std::stod(config.truncation));
}

// The counterpart scheme for the uniqueness check: truncates at twice the
// base schedule's rate (or at 2k when the base is untruncated), so the
// two constructions genuinely differ but share the limit.
TruncationSchedule counterpart_truncation(const TruncationSchedule& base) {
  const double coef =
      base.kind == TruncationSchedule::Kind::kLinear ? 2.0 * base.coef : 2.0;
  return TruncationSchedule::linear(coef);
}

void write_diagnostics(const fs::path& file, const DiagnosticsTable& table) {
  CsvWriter csv(file);
  if (table.row_labels.empty()) {
    csv.header(table.columns);
    for (const auto& row : table.rows) csv.row(row);
  } else {
    std::vector<std::string> columns;
    columns.reserve(table.columns.size() + 1);
    columns.emplace_back("label");
    columns.insert(columns.end(), table.columns.begin(), table.columns.end());
    csv.header(columns);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      csv.labeled_row(table.row_labels[i], table.rows[i]);
    }
  }
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out.push_back(c);
    } else if (c == '-' || c == '_') {
      out.push_back('_');
    }
    // other punctuation dropped: "x^2" -> "x2", "exp(x)" -> "expx"
  }
  return out;
}

void write_trace_csv(const fs::path& file, const IntegralTrace& trace) {
  CsvWriter csv(file);
  const std::vector<std::string> columns = {"level", "grid_size", "value"};
  csv.header(columns);
  for (const TraceLevel& row : trace.levels) {
    csv.row(std::vector<double>{static_cast<double>(row.level),
                                static_cast<double>(row.grid_size), row.value});
  }
}

void write_manifest(const fs::path& file, const ExperimentConfig& config) {
  nlohmann::json manifest;
  manifest["version"] = kVersion;
  nlohmann::json echo;
  echo["seed"] = config.master_seed;
  echo["horizon"] = config.horizon;
  echo["eval_time"] = config.eval_time;
  echo["paths"] = config.paths;
  echo["level_min"] = config.level_min;
  echo["level_max"] = config.level_max;
  echo["integrand"] = config.integrand;
  echo["const_value"] = config.const_value;
  echo["checks"] = config.checks;
  echo["truncation"] = config.truncation;
  echo["threshold_uniqueness"] = config.threshold_uniqueness;
  echo["threshold_convergence"] = config.threshold_convergence;
  echo["threads"] = config.threads;
  // out_dir deliberately not echoed: runs into different directories must
  // still produce identical files.
  manifest["config"] = echo;
  std::ofstream out(file);
  out << manifest.dump(2) << '\n';
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& config) {
  validate(config);
  if (config.threads > 0) omp_set_num_threads(config.threads);
  const RunMode mode = config.threads == 1 ? RunMode::kSerial : RunMode::kParallel;

  const int j = alignment_exponent(config);
  const double t = config.eval_time;
  const IntegrandFunctional f = make_integrand(config.integrand, config.const_value);
  const TruncationSchedule truncation = truncation_from_config(config, f);
  const int kmin = config.level_min;
  const int kmax = config.level_max;

  const fs::path out_dir(config.out_dir);
  fs::create_directories(out_dir);

  const auto ensemble_at = [&](int finest_level_on_t) {
    return PathEnsemble(config.master_seed,
                        TimeGrid::dyadic(finest_level_on_t + j, config.horizon),
                        config.paths);
  };

  RunOutcome outcome;
  for (const std::string& check : config.checks) {
    if (check == "convergence") {
      const ApproximationScheme scheme(t, kmin, kmax, truncation);
      const PathEnsemble ensemble = ensemble_at(kmax);
      CheckResult result = check_convergence(f, t, scheme, ensemble,
                                             config.threshold_convergence, mode);
      write_diagnostics(out_dir / ("convergence_" + sanitize(f.name) + ".csv"),
                        result.diagnostics);
      write_trace_csv(out_dir / ("trace_" + sanitize(f.name) + ".csv"),
                      integrate_general(f, t, scheme, ensemble.path(0)));
      outcome.results.push_back(std::move(result));
    } else if (check == "l2-decay") {
      const ApproximationScheme scheme(t, kmin, kmax, truncation);
      const PathEnsemble ensemble = ensemble_at(kmax + 4);
      CheckResult result = check_l2_decay(f, t, scheme, ensemble, mode);
      write_diagnostics(out_dir / ("l2_decay_" + sanitize(f.name) + ".csv"),
                        result.diagnostics);
      outcome.results.push_back(std::move(result));
    } else if (check == "uniqueness") {
      const ApproximationScheme scheme_a(t, kmin, kmax, truncation);
      const ApproximationScheme scheme_b(t, kmin, kmax,
                                         counterpart_truncation(truncation));
      const PathEnsemble ensemble = ensemble_at(kmax);
      CheckResult result = check_uniqueness(f, t, scheme_a, scheme_b, ensemble,
                                            config.threshold_uniqueness, mode);
      write_diagnostics(out_dir / ("uniqueness_" + sanitize(f.name) + ".csv"),
                        result.diagnostics);
      outcome.results.push_back(std::move(result));
    } else if (check == "isometry") {
      const PathEnsemble ensemble = ensemble_at(kmax);
      CheckResult result = check_isometry(f, t, kmax, ensemble, mode);
      write_diagnostics(out_dir / ("isometry_" + sanitize(f.name) + ".csv"),
                        result.diagnostics);
      outcome.results.push_back(std::move(result));
    } else if (check == "martingale") {
      const PathEnsemble ensemble = ensemble_at(kmax);
      const double s = t / 2.0;
      const std::vector<PrefixFunctional> gs = {
          {"one", [](const PathPrefix&) { return 1.0; }},
          {"w_s", [](const PathPrefix& p) { return p.value_at(p.cutoff()); }},
          {"sin_w_s",
           [](const PathPrefix& p) { return std::sin(p.value_at(p.cutoff())); }},
      };
      CheckResult result =
          check_martingale(f, s, t, gs, kmax, ensemble, mode);
      write_diagnostics(out_dir / ("martingale_" + sanitize(f.name) + ".csv"),
                        result.diagnostics);
      outcome.results.push_back(std::move(result));
    } else if (check == "continuity") {
      const ApproximationScheme scheme(t, kmin, kmax, truncation);
      const PathEnsemble ensemble = ensemble_at(kmax);
      CheckResult result = check_continuity(f, t, scheme, ensemble, mode);
      write_diagnostics(out_dir / ("continuity_" + sanitize(f.name) + ".csv"),
                        result.diagnostics);
      outcome.results.push_back(std::move(result));
    } else if (check == "ito-lemma") {
      const ApproximationScheme scheme(t, kmin, kmax, truncation);
      const int pilot = kmax + 2;
      const PathEnsemble ensemble = ensemble_at(pilot);
      for (const ScalarFunction& fun : ito_test_functions()) {
        CheckResult result =
            check_ito_lemma(fun, t, scheme, pilot, ensemble, mode);
        write_diagnostics(out_dir / ("ito_lemma_" + sanitize(fun.name) + ".csv"),
                          result.diagnostics);
        outcome.results.push_back(std::move(result));
      }
    } else {
      throw UsageError("run: unknown check '" + check + "'");
    }
  }

  {
    CsvWriter summary(out_dir / "summary.csv");
    const std::vector<std::string> columns = {"name", "statistic", "tolerance",
                                              "passed"};
    summary.header(columns);
    for (const CheckResult& result : outcome.results) {
      const std::vector<std::string> fields = {
          result.name, format_double(result.statistic),
          format_double(result.tolerance), result.passed ? "true" : "false"};
      summary.text_row(fields);
    }
  }
  write_manifest(out_dir / "manifest.json", config);

  for (const CheckResult& result : outcome.results) {
    if (!result.passed) outcome.status = 1;
  }
  return outcome;
}

std::string list_integrands_text() {
  std::ostringstream out;
  out << std::left << std::setw(16) << "name" << std::setw(7) << "h2"
      << std::setw(22) << "pathwise_continuous" << "parameters\n";
  for (const IntegrandInfo& info : integrand_catalog()) {
    out << std::left << std::setw(16) << info.name << std::setw(7)
        << (info.h2 ? "true" : "false") << std::setw(22)
        << (info.pathwise_continuous ? "true" : "false")
        << (info.parameter.empty() ? "-" : info.parameter) << '\n';
  }
  return out.str();
}

void dump_paths(const ExperimentConfig& config) {
  validate(config);
  const fs::path out_dir(config.out_dir);
  fs::create_directories(out_dir);
  const TimeGrid grid = TimeGrid::dyadic(config.level_max, config.horizon);
  const PathEnsemble ensemble(config.master_seed, grid, config.paths);
  const std::vector<std::string> columns = {"t", "w"};
  for (std::size_t i = 0; i < ensemble.count(); ++i) {
    const WienerPath path = ensemble.path(i);
    std::ostringstream name;
    name << "path_" << std::setfill('0') << std::setw(5) << i << ".csv";
    CsvWriter csv(out_dir / name.str());
    csv.header(columns);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      csv.row(std::vector<double>{grid[k], path.value_index(k)});
    }
  }
}

}  // namespace ito
