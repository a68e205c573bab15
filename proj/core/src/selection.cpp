#include "tsselect/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tsselect/errors.hpp"
#include "tsselect/metrics.hpp"

namespace tsselect {

std::string_view aggregation_id(Aggregation aggregation) {
  switch (aggregation) {
    case Aggregation::mean_error: return "mean-error";
    case Aggregation::avg_rank: return "avg-rank";
  }
  throw ConfigError("unknown aggregation enum value");
}

Aggregation parse_aggregation(std::string_view id) {
  if (id == "mean-error") return Aggregation::mean_error;
  if (id == "avg-rank") return Aggregation::avg_rank;
  throw ConfigError("unknown aggregation id '" + std::string(id) + "'");
}

FoldScoreMatrix evaluate_pool(std::span<const LearnerSpec> pool, const EmbeddedDataset& estimation,
                              const SplitPlan& plan) {
  const std::size_t rows = estimation.rows();
  for (const auto& iteration : plan.iterations) {
    for (const std::size_t i : iteration.train) {
      if (i >= rows) throw PlanError("plan train index " + std::to_string(i) + " out of range");
    }
    for (const std::size_t i : iteration.test) {
      if (i >= rows) throw PlanError("plan test index " + std::to_string(i) + " out of range");
    }
  }

  FoldScoreMatrix matrix;
  matrix.model_count = pool.size();
  matrix.iteration_count = plan.iterations.size();
  matrix.scores.assign(matrix.model_count * matrix.iteration_count, 0.0);

  for (std::size_t it = 0; it < plan.iterations.size(); ++it) {
    const auto& iteration = plan.iterations[it];
    const Matrix train_x = estimation.features.gather_rows(iteration.train);
    const Matrix test_x = estimation.features.gather_rows(iteration.test);
    std::vector<double> train_y(iteration.train.size());
    std::vector<double> test_y(iteration.test.size());
    for (std::size_t i = 0; i < iteration.train.size(); ++i) {
      train_y[i] = estimation.targets[iteration.train[i]];
    }
    for (std::size_t i = 0; i < iteration.test.size(); ++i) {
      test_y[i] = estimation.targets[iteration.test[i]];
    }

    for (std::size_t m = 0; m < pool.size(); ++m) {
      double score = std::numeric_limits<double>::infinity();
      try {
        const FittedModel model = fit(pool[m], train_x, train_y);
        score = rmse(predict(model, test_x), test_y);
      } catch (const Error&) {
        matrix.failures.emplace_back(m, it);
      }
      matrix.at(m, it) = score;
    }
  }
  return matrix;
}

std::vector<double> aggregate_mean(const FoldScoreMatrix& matrix) {
  std::vector<double> out(matrix.model_count, 0.0);
  for (std::size_t m = 0; m < matrix.model_count; ++m) {
    double sum = 0.0;
    for (std::size_t it = 0; it < matrix.iteration_count; ++it) sum += matrix.at(m, it);
    out[m] = sum / static_cast<double>(matrix.iteration_count);
  }
  return out;
}

std::vector<double> aggregate_rank(const FoldScoreMatrix& matrix) {
  std::vector<double> rank_sum(matrix.model_count, 0.0);
  std::vector<std::size_t> order(matrix.model_count);

  for (std::size_t it = 0; it < matrix.iteration_count; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double sa = matrix.at(a, it);
      const double sb = matrix.at(b, it);
      return sa < sb || (sa == sb && a < b);
    });
    // Walk groups of equal scores; each member gets the group's mean position.
    std::size_t i = 0;
    while (i < order.size()) {
      std::size_t j = i;
      while (j + 1 < order.size() && matrix.at(order[j + 1], it) == matrix.at(order[i], it)) ++j;
      const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
      for (std::size_t g = i; g <= j; ++g) rank_sum[order[g]] += shared;
      i = j + 1;
    }
  }

  for (double& r : rank_sum) r /= static_cast<double>(matrix.iteration_count);
  return rank_sum;
}

SelectionOutcome select_model(std::span<const double> aggregated,
                              std::span<const LearnerSpec> pool, Aggregation aggregation,
                              Method estimator) {
  if (aggregated.size() != pool.size()) {
    throw SelectionError("aggregated score count " + std::to_string(aggregated.size()) +
                         " does not match pool size " + std::to_string(pool.size()));
  }
  std::size_t best = pool.size();
  for (std::size_t m = 0; m < aggregated.size(); ++m) {
    if (!std::isfinite(aggregated[m])) continue;
    if (best == pool.size() || aggregated[m] < aggregated[best]) best = m;
  }
  if (best == pool.size()) {
    throw SelectionError("no viable model: every aggregated score is non-finite");
  }
  SelectionOutcome outcome;
  outcome.chosen = pool[best];
  outcome.aggregated.assign(aggregated.begin(), aggregated.end());
  outcome.aggregation = aggregation;
  outcome.estimator = estimator;
  return outcome;
}

}  // namespace tsselect
