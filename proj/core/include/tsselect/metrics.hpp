#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tsselect/embedding.hpp"
#include "tsselect/learners.hpp"
#include "tsselect/resampling.hpp"
#include "tsselect/selection.hpp"

namespace tsselect {

/// Root mean squared error. Throws MetricError on empty or mismatched input.
double rmse(std::span<const double> predictions, std::span<const double> actuals);

/// Every model fitted on the full estimation set and scored on the test set;
/// `best` is the argmin with registration-order tie-break.
struct OracleResult {
  std::vector<double> per_model_test_rmse;
  LearnerSpec best;
  double best_rmse = 0.0;
};

OracleResult oracle_best(std::span<const LearnerSpec> pool, const Partition& partition);

/// Percentage excess of the selected model's test error over the oracle's:
/// (selected - best) / best * 100, clamped to zero within a 1e-12 relative
/// tie tolerance. Throws UndefinedLossError when best is 0 and selected > 0.
double loss_of_estimator(double rmse_selected, double rmse_star);

struct SelectionQuality {
  Method estimator = Method::cv;
  Aggregation aggregation = Aggregation::mean_error;
  double loss_percent = 0.0;
  bool hit = false;
};

struct LossStats {
  double median = 0.0;
  double iqr = 0.0;
  double mean = 0.0;
};

/// Accuracy plus loss statistics across problems. average_loss covers only
/// the misses and is absent when every selection hit the oracle;
/// overall_loss covers all entries with hits contributing zero.
struct SummaryStats {
  double accuracy = 0.0;
  std::optional<LossStats> average_loss;
  LossStats overall_loss;
  std::size_t count = 0;
};

SummaryStats summarize(std::span<const SelectionQuality> per_series);

/// Linear-interpolation quantile (R type 7) of an ascending-sorted sample.
double quantile_type7(std::span<const double> sorted, double q);

LossStats loss_stats(std::vector<double> losses);

}  // namespace tsselect
