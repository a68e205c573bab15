// tsselect — model selection for one-step-ahead forecasting.
//
//   tsselect run    — run the estimator x aggregation matrix over a series dir
//   tsselect synth  — generate a seeded synthetic series as CSV
//   tsselect report — re-summarize an existing runs.jsonl

#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsselect/csv.hpp"
#include "tsselect/errors.hpp"
#include "tsselect/experiment.hpp"
#include "tsselect/learners.hpp"
#include "tsselect/synthetic.hpp"

namespace {

std::vector<std::string> split_csv_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void print_summary_table(const std::vector<tsselect::SummaryRow>& rows) {
  std::printf("%-14s %-11s %6s %9s %10s %10s %10s\n", "estimator", "aggregation", "count",
              "accuracy", "al_median", "oal_median", "oal_mean");
  for (const auto& row : rows) {
    if (row.count == 0) continue;
    std::printf("%-14s %-11s %6zu %9.3f %10.4f %10.4f %10.4f\n",
                std::string(tsselect::method_id(row.estimator)).c_str(),
                std::string(tsselect::aggregation_id(row.aggregation)).c_str(), row.count,
                row.stats.accuracy,
                row.stats.average_loss ? row.stats.average_loss->median : 0.0,
                row.stats.overall_loss.median, row.stats.overall_loss.mean);
  }
}

int run_command(const tsselect::ExperimentConfig& config, const std::string& pool_file) {
  std::vector<tsselect::LearnerSpec> pool =
      pool_file.empty() ? tsselect::default_pool(config.seed)
                        : tsselect::load_pool_file(pool_file, config.seed);

  std::vector<tsselect::SkipRecord> load_skips;
  const std::vector<tsselect::TimeSeries> series =
      tsselect::load_series_dir(config.data_dir, &load_skips);
  for (const auto& skip : load_skips) {
    std::cerr << "skip " << skip.series_id << " [" << skip.reason << "]: " << skip.detail << "\n";
  }
  if (series.empty()) {
    std::cerr << "error: no loadable series in " << config.data_dir << "\n";
    return 1;
  }
  std::cout << "loaded " << series.size() << " series from " << config.data_dir << "\n";

  const tsselect::ExperimentResult result = tsselect::run_experiment(config, series, pool);
  for (const auto& skip : result.skips) {
    std::cerr << "skip " << skip.series_id
              << (skip.estimator.empty() ? "" : "/" + skip.estimator) << " [" << skip.reason
              << "]: " << skip.detail << "\n";
  }

  tsselect::emit_reports(result.records, config.output_dir, config.stratify_threshold);
  tsselect::write_run_config(config, pool, config.output_dir / "run_config.json");
  std::cout << result.records.size() << " records -> " << (config.output_dir / "runs.jsonl")
            << "\n";

  print_summary_table(tsselect::summarize_records(result.records));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Performance-estimation methods for forecasting model selection"};
  app.require_subcommand(1);

  // --- run ---------------------------------------------------------------
  auto* run = app.add_subcommand("run", "Run the model-selection experiment");
  tsselect::ExperimentConfig config;
  std::string data_dir;
  std::string output_dir;
  std::string estimators_csv;
  std::string aggregations_csv;
  std::string pool_file;
  long long lag_override = -1;

  run->add_option("--data-dir", data_dir, "Directory of input CSV series")->required();
  run->add_option("--output", output_dir, "Output directory for reports")->required();
  run->add_option("--k", config.fold_count, "Folds / repetitions per estimator")
      ->capture_default_str();
  run->add_option("--test-ratio", config.test_ratio, "Held-out tail fraction")
      ->capture_default_str();
  run->add_option("--estimators", estimators_csv,
                  "Comma-separated estimator ids (default: all ten)");
  run->add_option("--aggregations", aggregations_csv,
                  "Comma-separated aggregation ids (default: mean-error,avg-rank)");
  run->add_option("--seed", config.seed, "Base seed")->capture_default_str();
  run->add_option("--p", lag_override, "Fixed lag order (bypasses FNN)");
  run->add_option("--min-length", config.min_length, "Minimum series length")
      ->capture_default_str();
  run->add_option("--stratify-threshold", config.stratify_threshold,
                  "Sample-size boundary for strata.csv")
      ->capture_default_str();
  run->add_option("--workers", config.workers, "Worker threads (0 = hardware)")
      ->capture_default_str();
  run->add_option("--pool", pool_file, "JSON pool definition overriding the built-in 22 models");
  run->set_config("--config", "", "Flat key=value file mirroring these flags");

  // --- synth -------------------------------------------------------------
  auto* synth = app.add_subcommand("synth", "Generate a synthetic series CSV");
  std::string kind;
  std::size_t synth_n = 0;
  std::uint64_t synth_seed = 0;
  std::string synth_out;
  synth->add_option("--kind", kind, "ar | sine | noise | trend")->required();
  synth->add_option("--n", synth_n, "Series length")->required();
  synth->add_option("--seed", synth_seed, "Seed")->capture_default_str();
  synth->add_option("--out", synth_out, "Output CSV path")->required();

  // --- report ------------------------------------------------------------
  auto* report = app.add_subcommand("report", "Re-summarize an existing runs.jsonl");
  std::string runs_path;
  std::string report_out;
  std::size_t report_threshold = 1000;
  report->add_option("--runs", runs_path, "Path to runs.jsonl")->required();
  report->add_option("--output", report_out, "Output directory")->required();
  report->add_option("--stratify-threshold", report_threshold, "Sample-size boundary")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      config.data_dir = data_dir;
      config.output_dir = output_dir;
      if (lag_override >= 0) config.lag_override = static_cast<std::size_t>(lag_override);
      if (!estimators_csv.empty()) {
        config.estimators.clear();
        for (const auto& id : split_csv_list(estimators_csv)) {
          config.estimators.push_back(tsselect::parse_method(id));
        }
      }
      if (!aggregations_csv.empty()) {
        config.aggregations.clear();
        for (const auto& id : split_csv_list(aggregations_csv)) {
          config.aggregations.push_back(tsselect::parse_aggregation(id));
        }
      }
      return run_command(config, pool_file);
    }
    if (*synth) {
      const tsselect::TimeSeries series =
          tsselect::generate_synthetic(tsselect::parse_synthetic_kind(kind), synth_n, synth_seed);
      tsselect::write_series_csv(series, synth_out);
      std::cout << "wrote " << series.size() << " values to " << synth_out << "\n";
      return 0;
    }
    if (*report) {
      const std::vector<tsselect::RunRecord> records = tsselect::read_runs_jsonl(runs_path);
      if (records.empty()) {
        std::cerr << "error: no records in " << runs_path << "\n";
        return 1;
      }
      tsselect::emit_summaries(records, report_out, report_threshold);
      print_summary_table(tsselect::summarize_records(records));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
