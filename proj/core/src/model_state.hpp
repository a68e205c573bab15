#pragma once

#include <variant>
#include <vector>

#include "tree.hpp"
#include "tsselect/matrix.hpp"

namespace tsselect::detail {

struct NaiveState {};

struct MeanState {
  double value = 0.0;
};

struct LinearState {
  std::vector<double> coef;
  double intercept = 0.0;
};

struct KnnState {
  Matrix train_features;
  std::vector<double> train_targets;
  std::size_t k = 1;
};

struct TreeState {
  TreeModel tree;
};

struct BaggedState {
  std::vector<TreeModel> trees;
};

struct BoostedState {
  double base = 0.0;
  double learning_rate = 0.1;
  std::vector<Stump> stumps;
};

struct ModelState {
  std::variant<NaiveState, MeanState, LinearState, KnnState, TreeState, BaggedState, BoostedState>
      value;
};

}  // namespace tsselect::detail
