#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tsselect {

/// The ten performance-estimation methods.
enum class Method {
  cv,                   // shuffled K-fold
  cv_blocked,           // contiguous K-fold
  cv_modified,          // shuffled K-fold, dependent training rows purged
  cv_hv_blocked,        // contiguous K-fold with a gap around the test block
  holdout,              // single ordered 70/30 split
  repeated_holdout,     // K randomized ordered 60/10 windows
  preq_blocks,          // growing window over K blocks
  preq_sliding_blocks,  // sliding window over K blocks
  preq_blocks_trim,     // growing window, early iterations dropped
  preq_blocks_gap,      // growing window with a skipped block before the test
};

inline constexpr std::array<Method, 10> kAllMethods = {
    Method::cv,          Method::cv_blocked,       Method::cv_modified,
    Method::cv_hv_blocked, Method::holdout,        Method::repeated_holdout,
    Method::preq_blocks, Method::preq_sliding_blocks, Method::preq_blocks_trim,
    Method::preq_blocks_gap,
};

/// Canonical identifier, used by the CLI, config files and reports.
std::string_view method_id(Method method);
Method parse_method(std::string_view id);

/// Parameters for plan generation. fold_count is K; lag_order feeds the
/// purge distance of cv_modified / cv_hv_blocked. Fractions have
/// method-specific defaults (see defaults_for).
struct ResamplerSpec {
  Method method = Method::cv;
  std::size_t fold_count = 10;
  std::size_t lag_order = 1;
  std::uint64_t seed = 0;
  double train_fraction = 0.7;
  double test_fraction = 0.3;
  double trim_keep_fraction = 0.6;

  /// Spec with the conventional fractions for the method: holdout trains on
  /// 70%, repeated holdout uses 60/10 windows.
  static ResamplerSpec defaults_for(Method method, std::size_t fold_count = 10,
                                    std::size_t lag_order = 1, std::uint64_t seed = 0);
};

struct PlanIteration {
  std::vector<std::size_t> train;  // sorted ascending
  std::vector<std::size_t> test;   // sorted ascending

  bool operator==(const PlanIteration&) const = default;
};

/// Materialized train/test index iterations over [0, rows).
struct SplitPlan {
  Method method = Method::cv;
  std::vector<PlanIteration> iterations;
  ResamplerSpec params;
  std::size_t rows = 0;
};

// Each generator takes the number of embedded rows and the spec, and throws
// PlanError when the method is infeasible for that size.
SplitPlan cv_shuffled(std::size_t rows, const ResamplerSpec& spec);
SplitPlan cv_blocked(std::size_t rows, const ResamplerSpec& spec);
SplitPlan cv_modified(std::size_t rows, const ResamplerSpec& spec);
SplitPlan cv_hv_blocked(std::size_t rows, const ResamplerSpec& spec);
SplitPlan holdout(std::size_t rows, const ResamplerSpec& spec);
SplitPlan repeated_holdout(std::size_t rows, const ResamplerSpec& spec);
SplitPlan preq_blocks(std::size_t rows, const ResamplerSpec& spec);
SplitPlan preq_sliding_blocks(std::size_t rows, const ResamplerSpec& spec);
SplitPlan preq_blocks_trim(std::size_t rows, const ResamplerSpec& spec);
SplitPlan preq_blocks_gap(std::size_t rows, const ResamplerSpec& spec);

/// Dispatch on spec.method.
SplitPlan make_plan(std::size_t rows, const ResamplerSpec& spec);

/// Fold sizes for a K-way partition of `rows`: floor(rows/K) each, with the
/// first rows % K folds one row larger.
std::vector<std::size_t> fold_sizes(std::size_t rows, std::size_t fold_count);

/// Training indices with every index within `distance` of a test index
/// removed (|train - test| <= distance). Inputs and output sorted ascending.
std::vector<std::size_t> purge_within(const std::vector<std::size_t>& train,
                                      const std::vector<std::size_t>& test,
                                      std::size_t distance);

}  // namespace tsselect
