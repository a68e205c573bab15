#pragma once

// Regression trees over pre-sorted feature orders. Sorting happens once per
// fit; node partitions keep the per-feature orders intact, so growing a tree
// costs O(depth * features * rows) after the initial sort.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tsselect/matrix.hpp"

namespace tsselect::detail {

struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double value = 0.0;
};

struct TreeModel {
  std::vector<TreeNode> nodes;

  double predict_row(std::span<const double> row) const {
    std::int32_t at = 0;
    while (nodes[static_cast<std::size_t>(at)].feature >= 0) {
      const TreeNode& node = nodes[static_cast<std::size_t>(at)];
      at = row[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
    }
    return nodes[static_cast<std::size_t>(at)].value;
  }
};

/// Row indices sorted by (feature value, row index), one list per feature.
using SortedOrders = std::vector<std::vector<std::size_t>>;

SortedOrders sort_features(const Matrix& features);

struct TreeGrowth {
  std::size_t max_depth = 4;
  double min_leaf_weight = 1.0;
};

/// Least-squares tree on weighted rows. Ties between equally good splits go
/// to the lowest feature index, then the lowest threshold. Rows with zero
/// weight are routed but never scored.
TreeModel grow_tree(const Matrix& features, std::span<const double> targets,
                    std::span<const double> weights, const SortedOrders& root_orders,
                    const TreeGrowth& growth);

struct Stump {
  std::int32_t feature = 0;
  double threshold = 0.0;
  double left_value = 0.0;
  double right_value = 0.0;

  double predict_row(std::span<const double> row) const {
    return row[static_cast<std::size_t>(feature)] <= threshold ? left_value : right_value;
  }
};

/// Best single split of `targets` over the presorted orders, or nullopt when
/// no split separates distinct feature values. Used by the boosting loop,
/// where orders stay fixed while targets are residuals.
std::optional<Stump> fit_stump(const Matrix& features, std::span<const double> targets,
                               const SortedOrders& orders);

}  // namespace tsselect::detail
