#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsselect/embedding.hpp"
#include "tsselect/learners.hpp"
#include "tsselect/resampling.hpp"

namespace tsselect {

/// Per-model, per-iteration loss values. Fit failures are recorded as +inf,
/// which keeps the model rankable (it ranks last).
struct FoldScoreMatrix {
  std::size_t model_count = 0;
  std::size_t iteration_count = 0;
  std::vector<double> scores;  // row-major, models x iterations
  std::string metric = "RMSE";
  std::vector<std::pair<std::size_t, std::size_t>> failures;  // (model, iteration)

  double at(std::size_t model, std::size_t iteration) const {
    return scores[model * iteration_count + iteration];
  }
  double& at(std::size_t model, std::size_t iteration) {
    return scores[model * iteration_count + iteration];
  }
};

enum class Aggregation { mean_error, avg_rank };

std::string_view aggregation_id(Aggregation aggregation);
Aggregation parse_aggregation(std::string_view id);

/// Fits every pool member on each iteration's training rows and scores it on
/// the iteration's test rows. Plan indices must be valid for the estimation
/// data; out-of-range indices throw PlanError.
FoldScoreMatrix evaluate_pool(std::span<const LearnerSpec> pool, const EmbeddedDataset& estimation,
                              const SplitPlan& plan);

/// Row-wise arithmetic mean.
std::vector<double> aggregate_mean(const FoldScoreMatrix& matrix);

/// Mean of within-iteration ranks (rank 1 = best; ties share the average of
/// their positions).
std::vector<double> aggregate_rank(const FoldScoreMatrix& matrix);

struct SelectionOutcome {
  LearnerSpec chosen;
  std::vector<double> aggregated;
  Aggregation aggregation = Aggregation::mean_error;
  Method estimator = Method::cv;
};

/// Argmin of the aggregated vector; ties go to the lowest registration
/// index. Throws SelectionError when no model has a finite score.
SelectionOutcome select_model(std::span<const double> aggregated,
                              std::span<const LearnerSpec> pool,
                              Aggregation aggregation = Aggregation::mean_error,
                              Method estimator = Method::cv);

}  // namespace tsselect
