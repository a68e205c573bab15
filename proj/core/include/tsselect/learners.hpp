#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tsselect/matrix.hpp"

namespace tsselect {

/// One entry in the learner pool: an algorithm id plus its hyperparameters.
///
/// Algorithms and their keys:
///   naive           — (none) predicts the most recent lag
///   mean            — (none) predicts the training-target mean
///   ols             — (none) least-squares auto-regression
///   ridge           — lambda
///   elastic-net     — lambda, mixing (L1 share in [0,1])
///   knn             — k (clamped to the training size)
///   tree            — max_depth
///   bagged-trees    — trees, max_depth (default 8), min_leaf (default 3), seed
///   boosted-stumps  — iterations, learning_rate
struct LearnerSpec {
  std::string algorithm;
  std::map<std::string, double> hyperparameters;
  std::string display_name;
  std::size_t registration_index = 0;

  double param(const std::string& key, double fallback) const {
    const auto it = hyperparameters.find(key);
    return it == hyperparameters.end() ? fallback : it->second;
  }
};

namespace detail {
struct ModelState;
}

/// Immutable trained model. Cheap to copy; prediction is const and
/// thread-safe.
class FittedModel {
public:
  FittedModel(LearnerSpec spec, std::shared_ptr<const detail::ModelState> state,
              std::size_t training_rows, std::size_t feature_width, bool ridge_fallback);

  const LearnerSpec& spec() const { return spec_; }
  std::size_t training_rows() const { return training_rows_; }
  std::size_t feature_width() const { return feature_width_; }

  /// True when a singular least-squares system was rescued by a tiny ridge
  /// penalty.
  bool used_ridge_fallback() const { return ridge_fallback_; }

  const detail::ModelState& state() const { return *state_; }

private:
  LearnerSpec spec_;
  std::shared_ptr<const detail::ModelState> state_;
  std::size_t training_rows_ = 0;
  std::size_t feature_width_ = 0;
  bool ridge_fallback_ = false;
};

/// Trains spec on (features, targets). Throws FitError on fewer than 2 rows,
/// zero columns, or non-finite inputs.
FittedModel fit(const LearnerSpec& spec, const Matrix& features, std::span<const double> targets);

/// One prediction per feature row. Throws PredictError on width mismatch.
std::vector<double> predict(const FittedModel& model, const Matrix& features);

/// The built-in 22-model pool. pool_seed feeds the stochastic members
/// (seed = pool_seed XOR registration index).
std::vector<LearnerSpec> default_pool(std::uint64_t pool_seed = 0);

/// Pool from a JSON file: an array of {"algorithm": ..., "hyperparameters":
/// {...}, "display_name": optional}. Registration order follows the array.
std::vector<LearnerSpec> load_pool_file(const std::filesystem::path& path,
                                        std::uint64_t pool_seed = 0);

}  // namespace tsselect
