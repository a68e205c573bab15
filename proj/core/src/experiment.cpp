#include "tsselect/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "tsselect/csv.hpp"
#include "tsselect/embedding.hpp"
#include "tsselect/errors.hpp"
#include "tsselect/learners.hpp"
#include "tsselect/rng.hpp"

namespace tsselect {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t estimator_seed(std::uint64_t base, const std::string& series_id, Method method) {
  return mix_seed(base ^ fnv1a(series_id) ^
                  (static_cast<std::uint64_t>(method) + 1) * 0x9e3779b97f4a7c15ull);
}

struct SeriesOutput {
  std::vector<RunRecord> records;
  std::vector<SkipRecord> skips;
  std::size_t plan_index_checks = 0;
};

SeriesOutput process_series(const ExperimentConfig& config, const TimeSeries& series,
                            const std::vector<LearnerSpec>& pool) {
  SeriesOutput out;
  const std::string& id = series.id();

  if (series.size() < config.min_length) {
    out.skips.push_back({id, "", "too_short",
                         std::to_string(series.size()) + " < " + std::to_string(config.min_length)});
    return out;
  }
  if (series.stddev() == 0.0) {
    out.skips.push_back({id, "", "zero_variance", "constant series"});
    return out;
  }

  std::size_t lag_order = 0;
  EmbeddedDataset embedded;
  Partition split;
  try {
    lag_order = config.lag_override ? *config.lag_override
                                    : select_embedding_dimension(series, config.fnn).lag_order;
    embedded = embed(series, lag_order);
    split = partition(embedded, 1.0 - config.test_ratio);
  } catch (const Error& e) {
    out.skips.push_back({id, "", "embed_failed", e.what()});
    return out;
  }

  OracleResult oracle;
  try {
    oracle = oracle_best(pool, split);
  } catch (const Error& e) {
    out.skips.push_back({id, "", "oracle_failed", e.what()});
    return out;
  }

  const std::size_t estimation_rows = split.estimation.rows();

  for (const Method method : config.estimators) {
    const auto started = Clock::now();
    SplitPlan plan;
    FoldScoreMatrix matrix;
    try {
      const ResamplerSpec spec = ResamplerSpec::defaults_for(
          method, config.fold_count, lag_order, estimator_seed(config.seed, id, method));
      plan = make_plan(estimation_rows, spec);

      // Leakage guard: estimator plans may only index estimation rows.
      for (const auto& iteration : plan.iterations) {
        for (const std::size_t idx : iteration.train) {
          if (idx >= estimation_rows) {
            throw PlanError("estimator plan indexes test-partition row " + std::to_string(idx));
          }
          ++out.plan_index_checks;
        }
        for (const std::size_t idx : iteration.test) {
          if (idx >= estimation_rows) {
            throw PlanError("estimator plan indexes test-partition row " + std::to_string(idx));
          }
          ++out.plan_index_checks;
        }
      }

      matrix = evaluate_pool(pool, split.estimation, plan);
    } catch (const Error& e) {
      out.skips.push_back({id, std::string(method_id(method)), "plan_error", e.what()});
      continue;
    }
    const double shared_seconds = seconds_since(started);
    const std::size_t fit_count = pool.size() * plan.iterations.size();

    for (const Aggregation aggregation : config.aggregations) {
      const auto agg_started = Clock::now();
      SelectionOutcome outcome;
      try {
        const std::vector<double> aggregated = aggregation == Aggregation::mean_error
                                                   ? aggregate_mean(matrix)
                                                   : aggregate_rank(matrix);
        outcome = select_model(aggregated, pool, aggregation, method);
      } catch (const Error& e) {
        out.skips.push_back({id, std::string(method_id(method)), "selection_error", e.what()});
        continue;
      }
      const double agg_seconds = seconds_since(agg_started);

      RunRecord record;
      record.series_id = id;
      record.series_length = series.size();
      record.lag_order = lag_order;
      record.estimator = method;
      record.aggregation = aggregation;
      record.chosen_model = outcome.chosen.display_name;
      record.oracle_model = oracle.best.display_name;
      record.chosen_test_rmse = oracle.per_model_test_rmse[outcome.chosen.registration_index];
      record.oracle_test_rmse = oracle.best_rmse;
      record.wall_time_seconds = shared_seconds + agg_seconds;
      record.fit_count = fit_count;

      if (!std::isfinite(record.chosen_test_rmse)) {
        record.loss_defined = false;
        record.loss_percent = std::numeric_limits<double>::quiet_NaN();
        record.hit = false;
      } else {
        try {
          record.loss_percent = loss_of_estimator(record.chosen_test_rmse, oracle.best_rmse);
          record.loss_defined = true;
          record.hit = record.loss_percent == 0.0;
        } catch (const UndefinedLossError&) {
          record.loss_defined = false;
          record.loss_percent = std::numeric_limits<double>::quiet_NaN();
          record.hit = false;
        }
      }
      out.records.push_back(std::move(record));
    }
  }
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::vector<TimeSeries>& series,
                                const std::vector<LearnerSpec>& pool) {
  if (series.empty()) throw ConfigError("run_experiment: no input series");
  if (pool.empty()) throw ConfigError("run_experiment: empty learner pool");
  if (!(config.test_ratio > 0.0 && config.test_ratio < 1.0)) {
    throw ConfigError("test ratio must lie in (0,1)");
  }
  if (config.estimators.empty() || config.aggregations.empty()) {
    throw ConfigError("need at least one estimator and one aggregation");
  }

  std::vector<SeriesOutput> outputs(series.size());
  std::size_t workers = config.workers == 0
                            ? std::max<std::size_t>(1, std::thread::hardware_concurrency())
                            : config.workers;
  workers = std::min(workers, series.size());

  const auto worker_loop = [&](std::atomic<std::size_t>& next) {
    for (std::size_t i = next.fetch_add(1); i < series.size(); i = next.fetch_add(1)) {
      try {
        outputs[i] = process_series(config, series[i], pool);
      } catch (const std::exception& e) {
        outputs[i].skips.push_back({series[i].id(), "", "series_failed", e.what()});
      }
    }
  };

  if (workers <= 1) {
    std::atomic<std::size_t> next{0};
    worker_loop(next);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(worker_loop, std::ref(next));
    for (auto& t : threads) t.join();
  }

  ExperimentResult result;
  for (auto& out : outputs) {
    result.plan_index_checks += out.plan_index_checks;
    std::move(out.records.begin(), out.records.end(), std::back_inserter(result.records));
    std::move(out.skips.begin(), out.skips.end(), std::back_inserter(result.skips));
  }
  if (result.records.empty()) {
    throw Error("every series failed; see skip records");
  }
  return result;
}

std::vector<TimeSeries> load_series_dir(const std::filesystem::path& data_dir,
                                        std::vector<SkipRecord>* skips) {
  if (!std::filesystem::is_directory(data_dir)) {
    throw IoError("data directory not found: " + data_dir.string());
  }
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(data_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      paths.push_back(entry.path());
    }
  }
  std::sort(paths.begin(), paths.end());

  std::vector<TimeSeries> series;
  for (const auto& path : paths) {
    try {
      series.push_back(load_series_csv(path));
    } catch (const Error& e) {
      if (skips) skips->push_back({path.stem().string(), "", "unreadable", e.what()});
    }
  }
  return series;
}

std::vector<SummaryRow> summarize_records(const std::vector<RunRecord>& records) {
  std::vector<SummaryRow> rows;
  for (const Method method : kAllMethods) {
    for (const Aggregation aggregation : {Aggregation::mean_error, Aggregation::avg_rank}) {
      SummaryRow row;
      row.estimator = method;
      row.aggregation = aggregation;
      std::vector<SelectionQuality> qualities;
      for (const auto& record : records) {
        if (record.estimator != method || record.aggregation != aggregation) continue;
        if (!record.loss_defined) {
          ++row.excluded;
          continue;
        }
        qualities.push_back({method, aggregation, record.loss_percent, record.hit});
      }
      row.count = qualities.size();
      if (qualities.empty() && row.excluded == 0) continue;  // estimator not in this run
      if (!qualities.empty()) row.stats = summarize(qualities);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace tsselect
