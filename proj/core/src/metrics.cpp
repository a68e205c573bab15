#include "tsselect/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tsselect/errors.hpp"

namespace tsselect {

double rmse(std::span<const double> predictions, std::span<const double> actuals) {
  if (predictions.size() != actuals.size()) {
    throw MetricError("rmse: length mismatch (" + std::to_string(predictions.size()) + " vs " +
                      std::to_string(actuals.size()) + ")");
  }
  if (predictions.empty()) throw MetricError("rmse: empty input");
  double ss = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (!std::isfinite(predictions[i]) || !std::isfinite(actuals[i])) {
      throw MetricError("rmse: non-finite value at position " + std::to_string(i));
    }
    const double d = predictions[i] - actuals[i];
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(predictions.size()));
}

OracleResult oracle_best(std::span<const LearnerSpec> pool, const Partition& partition) {
  if (pool.empty()) throw OracleError("empty pool");
  OracleResult result;
  result.per_model_test_rmse.assign(pool.size(), std::numeric_limits<double>::infinity());

  for (std::size_t m = 0; m < pool.size(); ++m) {
    try {
      const FittedModel model =
          fit(pool[m], partition.estimation.features, partition.estimation.targets);
      result.per_model_test_rmse[m] =
          rmse(predict(model, partition.test.features), partition.test.targets);
    } catch (const Error&) {
      // stays infinite
    }
  }

  std::size_t best = pool.size();
  for (std::size_t m = 0; m < pool.size(); ++m) {
    if (!std::isfinite(result.per_model_test_rmse[m])) continue;
    if (best == pool.size() || result.per_model_test_rmse[m] < result.per_model_test_rmse[best]) {
      best = m;
    }
  }
  if (best == pool.size()) throw OracleError("every model failed on the estimation set");
  result.best = pool[best];
  result.best_rmse = result.per_model_test_rmse[best];
  return result;
}

double loss_of_estimator(double rmse_selected, double rmse_star) {
  if (!(rmse_star >= 0.0) || !(rmse_selected >= 0.0)) {
    throw MetricError("loss_of_estimator: negative or NaN RMSE");
  }
  if (rmse_star == 0.0) {
    if (rmse_selected == 0.0) return 0.0;
    throw UndefinedLossError("oracle RMSE is zero while the selected model's is " +
                             std::to_string(rmse_selected));
  }
  if (rmse_selected < rmse_star * (1.0 - 1e-9)) {
    throw MetricError("loss_of_estimator: selected RMSE " + std::to_string(rmse_selected) +
                      " beats the oracle " + std::to_string(rmse_star));
  }
  if (std::abs(rmse_selected - rmse_star) <= 1e-12 * rmse_star) return 0.0;
  return (rmse_selected - rmse_star) / rmse_star * 100.0;
}

double quantile_type7(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw MetricError("quantile of empty sample");
  if (sorted.size() == 1) return sorted[0];
  const double h = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

LossStats loss_stats(std::vector<double> losses) {
  std::sort(losses.begin(), losses.end());
  LossStats stats;
  stats.median = quantile_type7(losses, 0.5);
  stats.iqr = quantile_type7(losses, 0.75) - quantile_type7(losses, 0.25);
  double sum = 0.0;
  for (const double v : losses) sum += v;
  stats.mean = sum / static_cast<double>(losses.size());
  return stats;
}

SummaryStats summarize(std::span<const SelectionQuality> per_series) {
  if (per_series.empty()) throw MetricError("summarize: empty input");
  SummaryStats stats;
  stats.count = per_series.size();

  std::vector<double> all;
  std::vector<double> misses;
  all.reserve(per_series.size());
  std::size_t hits = 0;
  for (const auto& entry : per_series) {
    all.push_back(entry.loss_percent);
    if (entry.hit) {
      ++hits;
    } else {
      misses.push_back(entry.loss_percent);
    }
  }
  stats.accuracy = static_cast<double>(hits) / static_cast<double>(per_series.size());
  stats.overall_loss = loss_stats(std::move(all));
  if (!misses.empty()) stats.average_loss = loss_stats(std::move(misses));
  return stats;
}

}  // namespace tsselect
