#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tsselect/fnn.hpp"
#include "tsselect/metrics.hpp"
#include "tsselect/resampling.hpp"
#include "tsselect/selection.hpp"
#include "tsselect/time_series.hpp"

namespace tsselect {

/// Experiment settings. Defaults: K = 10 folds, 70/30 estimation/test split,
/// all ten estimators, both aggregations.
struct ExperimentConfig {
  std::filesystem::path data_dir;
  std::filesystem::path output_dir;
  std::size_t fold_count = 10;
  double test_ratio = 0.3;
  std::vector<Method> estimators{kAllMethods.begin(), kAllMethods.end()};
  std::vector<Aggregation> aggregations{Aggregation::mean_error, Aggregation::avg_rank};
  std::uint64_t seed = 0;
  std::optional<std::size_t> lag_override;  // bypasses FNN when set
  std::size_t min_length = TimeSeries::kMinLength;
  std::size_t stratify_threshold = 1000;
  std::size_t workers = 0;  // 0 = hardware concurrency
  FnnConfig fnn;
};

/// One row per (series, estimator, aggregation).
struct RunRecord {
  std::string series_id;
  std::size_t series_length = 0;
  std::size_t lag_order = 0;
  Method estimator = Method::cv;
  Aggregation aggregation = Aggregation::mean_error;
  std::string chosen_model;
  std::string oracle_model;
  double chosen_test_rmse = 0.0;
  double oracle_test_rmse = 0.0;
  double loss_percent = 0.0;
  bool hit = false;
  bool loss_defined = true;  // false when the oracle error is exactly zero
  double wall_time_seconds = 0.0;
  std::size_t fit_count = 0;
};

struct SkipRecord {
  std::string series_id;
  std::string estimator;  // empty when the whole series was skipped
  std::string reason;     // too_short | zero_variance | embed_failed | ...
  std::string detail;
};

struct ExperimentResult {
  std::vector<RunRecord> records;
  std::vector<SkipRecord> skips;
  /// Plan indices checked against the estimation row count (leakage guard);
  /// a violation throws instead of counting.
  std::size_t plan_index_checks = 0;
};

/// Full estimator x aggregation matrix over the given series. Per-series
/// failures are recorded as skips; throws only when every series fails.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::vector<TimeSeries>& series,
                                const std::vector<LearnerSpec>& pool);

/// All *.csv files under data_dir, in filename order.
std::vector<TimeSeries> load_series_dir(const std::filesystem::path& data_dir,
                                        std::vector<SkipRecord>* skips = nullptr);

void write_runs_jsonl(const std::vector<RunRecord>& records, const std::filesystem::path& path);
std::vector<RunRecord> read_runs_jsonl(const std::filesystem::path& path);

/// Writes runs.jsonl, summary.csv, strata.csv and timing.csv into output_dir.
void emit_reports(const std::vector<RunRecord>& records, const std::filesystem::path& output_dir,
                  std::size_t stratify_threshold);

/// Summary and strata CSVs only (used by the `report` subcommand on existing
/// runs).
void emit_summaries(const std::vector<RunRecord>& records, const std::filesystem::path& output_dir,
                    std::size_t stratify_threshold);

/// Effective configuration echo (including FNN knobs and the pool) for
/// reproducibility.
void write_run_config(const ExperimentConfig& config, const std::vector<LearnerSpec>& pool,
                      const std::filesystem::path& path);

/// Per-(estimator, aggregation) summary used by the CSV writers and tests.
struct SummaryRow {
  Method estimator = Method::cv;
  Aggregation aggregation = Aggregation::mean_error;
  std::size_t count = 0;     // records with a defined loss
  std::size_t excluded = 0;  // records skipped for a zero oracle error
  SummaryStats stats;
};

std::vector<SummaryRow> summarize_records(const std::vector<RunRecord>& records);

}  // namespace tsselect
