#include "tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tsselect::detail {

SortedOrders sort_features(const Matrix& features) {
  SortedOrders orders(features.cols());
  for (std::size_t f = 0; f < features.cols(); ++f) {
    auto& order = orders[f];
    order.resize(features.rows());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double va = features(a, f);
      const double vb = features(b, f);
      return va < vb || (va == vb && a < b);
    });
  }
  return orders;
}

namespace {

struct SplitChoice {
  std::size_t feature = 0;
  double threshold = 0.0;
  double score = -std::numeric_limits<double>::infinity();
  bool found = false;
};

// Maximizes sum_L^2/w_L + sum_R^2/w_R, which is equivalent to minimizing the
// weighted SSE of the two children. Strict improvement keeps the first
// (lowest feature, lowest threshold) of any tied candidates.
SplitChoice best_split(const Matrix& features, std::span<const double> targets,
                       std::span<const double> weights, const SortedOrders& orders,
                       double total_w, double total_wy, double min_leaf_weight) {
  SplitChoice best;
  const double parent_score = total_wy * total_wy / total_w;
  const double margin = 1e-12 * std::max(1.0, std::abs(parent_score));

  for (std::size_t f = 0; f < orders.size(); ++f) {
    const auto& order = orders[f];
    double left_w = 0.0;
    double left_wy = 0.0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      const std::size_t row = order[i];
      left_w += weights[row];
      left_wy += weights[row] * targets[row];
      const double here = features(row, f);
      const double next = features(order[i + 1], f);
      if (next <= here) continue;  // only between distinct values
      const double right_w = total_w - left_w;
      if (left_w < min_leaf_weight || right_w < min_leaf_weight) continue;
      const double right_wy = total_wy - left_wy;
      const double score = left_wy * left_wy / left_w + right_wy * right_wy / right_w;
      if (score > best.score && score > parent_score + margin) {
        best.feature = f;
        best.threshold = here + (next - here) / 2.0;
        best.score = score;
        best.found = true;
      }
    }
  }
  return best;
}

struct Builder {
  const Matrix& features;
  std::span<const double> targets;
  std::span<const double> weights;
  const TreeGrowth& growth;
  std::vector<TreeNode> nodes;

  std::int32_t build(const SortedOrders& orders, std::size_t depth) {
    double total_w = 0.0;
    double total_wy = 0.0;
    for (const std::size_t row : orders[0]) {
      total_w += weights[row];
      total_wy += weights[row] * targets[row];
    }
    const double leaf_value = total_w > 0.0 ? total_wy / total_w : 0.0;

    const std::int32_t index = static_cast<std::int32_t>(nodes.size());
    nodes.push_back(TreeNode{-1, 0.0, -1, -1, leaf_value});

    if (depth >= growth.max_depth || total_w < 2.0 * growth.min_leaf_weight) return index;
    const SplitChoice split = best_split(features, targets, weights, orders, total_w, total_wy,
                                         growth.min_leaf_weight);
    if (!split.found) return index;

    SortedOrders left(orders.size());
    SortedOrders right(orders.size());
    for (std::size_t f = 0; f < orders.size(); ++f) {
      for (const std::size_t row : orders[f]) {
        if (features(row, split.feature) <= split.threshold) {
          left[f].push_back(row);
        } else {
          right[f].push_back(row);
        }
      }
    }

    nodes[static_cast<std::size_t>(index)].feature = static_cast<std::int32_t>(split.feature);
    nodes[static_cast<std::size_t>(index)].threshold = split.threshold;
    const std::int32_t l = build(left, depth + 1);
    const std::int32_t r = build(right, depth + 1);
    nodes[static_cast<std::size_t>(index)].left = l;
    nodes[static_cast<std::size_t>(index)].right = r;
    return index;
  }
};

}  // namespace

TreeModel grow_tree(const Matrix& features, std::span<const double> targets,
                    std::span<const double> weights, const SortedOrders& root_orders,
                    const TreeGrowth& growth) {
  Builder builder{features, targets, weights, growth, {}};
  builder.nodes.reserve(64);
  builder.build(root_orders, 0);
  return TreeModel{std::move(builder.nodes)};
}

std::optional<Stump> fit_stump(const Matrix& features, std::span<const double> targets,
                               const SortedOrders& orders) {
  const std::size_t rows = orders.empty() ? 0 : orders[0].size();
  if (rows < 2) return std::nullopt;
  static thread_local std::vector<double> unit_weights;
  if (unit_weights.size() < rows) unit_weights.assign(rows, 1.0);

  double total_wy = 0.0;
  for (const double t : targets) total_wy += t;
  const double total_w = static_cast<double>(rows);

  const SplitChoice split = best_split(features, targets, {unit_weights.data(), rows}, orders,
                                       total_w, total_wy, 1.0);
  if (!split.found) return std::nullopt;

  double left_w = 0.0;
  double left_wy = 0.0;
  for (const std::size_t row : orders[split.feature]) {
    if (features(row, split.feature) <= split.threshold) {
      left_w += 1.0;
      left_wy += targets[row];
    }
  }
  const double right_w = total_w - left_w;
  const double right_wy = total_wy - left_wy;
  return Stump{static_cast<std::int32_t>(split.feature), split.threshold, left_wy / left_w,
               right_wy / right_w};
}

}  // namespace tsselect::detail
