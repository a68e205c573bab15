#include "tsselect/learners.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <utility>

#include <nlohmann/json.hpp>

#include "linear.hpp"
#include "model_state.hpp"
#include "tree.hpp"
#include "tsselect/errors.hpp"
#include "tsselect/rng.hpp"

namespace tsselect {

namespace {

using detail::ModelState;

double mean_of(std::span<const double> values) {
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::size_t size_param(const LearnerSpec& spec, const std::string& key, std::size_t fallback) {
  const double raw = spec.param(key, static_cast<double>(fallback));
  if (!(raw >= 0.0) || raw != std::floor(raw)) {
    throw FitError(spec.display_name + ": hyperparameter '" + key +
                   "' must be a non-negative integer, got " + format_double(raw));
  }
  return static_cast<std::size_t>(raw);
}

void validate_inputs(const LearnerSpec& spec, const Matrix& features,
                     std::span<const double> targets) {
  if (features.rows() < 2) {
    throw FitError(spec.display_name + ": need at least 2 training rows, got " +
                   std::to_string(features.rows()));
  }
  if (features.cols() < 1) {
    throw FitError(spec.display_name + ": need at least 1 feature column");
  }
  if (targets.size() != features.rows()) {
    throw FitError(spec.display_name + ": target count " + std::to_string(targets.size()) +
                   " does not match row count " + std::to_string(features.rows()));
  }
  for (const double v : features.data()) {
    if (!std::isfinite(v)) throw FitError(spec.display_name + ": non-finite feature value");
  }
  for (const double v : targets) {
    if (!std::isfinite(v)) throw FitError(spec.display_name + ": non-finite target value");
  }
}

detail::BaggedState fit_bagged(const LearnerSpec& spec, const Matrix& features,
                               std::span<const double> targets) {
  const std::size_t tree_count = std::max<std::size_t>(1, size_param(spec, "trees", 25));
  const detail::TreeGrowth growth{size_param(spec, "max_depth", 8),
                                  static_cast<double>(std::max<std::size_t>(1, size_param(spec, "min_leaf", 3)))};
  const auto seed = static_cast<std::uint64_t>(spec.param("seed", 0.0));
  const std::size_t rows = features.rows();
  const detail::SortedOrders orders = detail::sort_features(features);

  detail::BaggedState state;
  state.trees.reserve(tree_count);
  std::vector<double> weights(rows);
  for (std::size_t b = 0; b < tree_count; ++b) {
    Rng rng(mix_seed(seed + b));
    std::fill(weights.begin(), weights.end(), 0.0);
    for (std::size_t i = 0; i < rows; ++i) weights[rng.below(rows)] += 1.0;
    state.trees.push_back(detail::grow_tree(features, targets, weights, orders, growth));
  }
  return state;
}

detail::BoostedState fit_boosted(const LearnerSpec& spec, const Matrix& features,
                                 std::span<const double> targets) {
  const std::size_t iterations = size_param(spec, "iterations", 50);
  const double learning_rate = spec.param("learning_rate", 0.1);
  if (!(learning_rate > 0.0)) {
    throw FitError(spec.display_name + ": learning_rate must be positive");
  }

  detail::BoostedState state;
  state.base = mean_of(targets);
  state.learning_rate = learning_rate;
  if (iterations == 0) return state;

  const detail::SortedOrders orders = detail::sort_features(features);
  std::vector<double> residual(targets.begin(), targets.end());
  for (double& r : residual) r -= state.base;

  state.stumps.reserve(iterations);
  for (std::size_t it = 0; it < iterations; ++it) {
    const auto stump = detail::fit_stump(features, residual, orders);
    if (!stump) break;  // nothing left to split on
    for (std::size_t i = 0; i < features.rows(); ++i) {
      residual[i] -= learning_rate * stump->predict_row(features.row(i));
    }
    state.stumps.push_back(*stump);
  }
  return state;
}

}  // namespace

FittedModel::FittedModel(LearnerSpec spec, std::shared_ptr<const ModelState> state,
                         std::size_t training_rows, std::size_t feature_width, bool ridge_fallback)
    : spec_(std::move(spec)),
      state_(std::move(state)),
      training_rows_(training_rows),
      feature_width_(feature_width),
      ridge_fallback_(ridge_fallback) {}

FittedModel fit(const LearnerSpec& spec, const Matrix& features, std::span<const double> targets) {
  validate_inputs(spec, features, targets);

  ModelState state;
  bool fallback = false;
  const std::string& algo = spec.algorithm;

  if (algo == "naive") {
    state.value = detail::NaiveState{};
  } else if (algo == "mean") {
    state.value = detail::MeanState{mean_of(targets)};
  } else if (algo == "ols") {
    auto ls = detail::fit_ols(features, targets);
    fallback = ls.fallback;
    state.value = detail::LinearState{std::move(ls.coef), ls.intercept};
  } else if (algo == "ridge") {
    const double lambda = spec.param("lambda", 1.0);
    if (!(lambda > 0.0)) throw FitError(spec.display_name + ": lambda must be positive");
    auto ls = detail::fit_ridge(features, targets, lambda);
    state.value = detail::LinearState{std::move(ls.coef), ls.intercept};
  } else if (algo == "elastic-net") {
    const double lambda = spec.param("lambda", 1.0);
    const double mixing = spec.param("mixing", 0.5);
    if (!(lambda >= 0.0) || !(mixing >= 0.0 && mixing <= 1.0)) {
      throw FitError(spec.display_name + ": lambda must be >= 0 and mixing in [0,1]");
    }
    auto ls = detail::fit_elastic_net(features, targets, lambda, mixing);
    state.value = detail::LinearState{std::move(ls.coef), ls.intercept};
  } else if (algo == "knn") {
    const std::size_t k = std::max<std::size_t>(1, size_param(spec, "k", 3));
    state.value = detail::KnnState{features, {targets.begin(), targets.end()},
                                   std::min(k, features.rows())};
  } else if (algo == "tree") {
    const detail::TreeGrowth growth{std::max<std::size_t>(1, size_param(spec, "max_depth", 4)), 1.0};
    const std::vector<double> weights(features.rows(), 1.0);
    state.value =
        detail::TreeState{detail::grow_tree(features, targets, weights,
                                            detail::sort_features(features), growth)};
  } else if (algo == "bagged-trees") {
    state.value = fit_bagged(spec, features, targets);
  } else if (algo == "boosted-stumps") {
    state.value = fit_boosted(spec, features, targets);
  } else {
    throw FitError("unknown algorithm '" + algo + "'");
  }

  return FittedModel(spec, std::make_shared<const ModelState>(std::move(state)), features.rows(),
                     features.cols(), fallback);
}

std::vector<double> predict(const FittedModel& model, const Matrix& features) {
  if (features.cols() != model.feature_width()) {
    throw PredictError(model.spec().display_name + ": feature width " +
                       std::to_string(features.cols()) + " does not match training width " +
                       std::to_string(model.feature_width()));
  }
  const std::size_t rows = features.rows();
  std::vector<double> out(rows);

  const auto& value = model.state().value;
  if (std::holds_alternative<detail::NaiveState>(value)) {
    for (std::size_t i = 0; i < rows; ++i) out[i] = features(i, 0);
  } else if (const auto* m = std::get_if<detail::MeanState>(&value)) {
    std::fill(out.begin(), out.end(), m->value);
  } else if (const auto* lin = std::get_if<detail::LinearState>(&value)) {
    for (std::size_t i = 0; i < rows; ++i) {
      double acc = lin->intercept;
      const auto row = features.row(i);
      for (std::size_t j = 0; j < row.size(); ++j) acc += lin->coef[j] * row[j];
      out[i] = acc;
    }
  } else if (const auto* knn = std::get_if<detail::KnnState>(&value)) {
    const std::size_t train_rows = knn->train_features.rows();
    std::vector<std::pair<double, std::size_t>> dist(train_rows);
    for (std::size_t i = 0; i < rows; ++i) {
      const auto query = features.row(i);
      for (std::size_t t = 0; t < train_rows; ++t) {
        const auto ref = knn->train_features.row(t);
        double d2 = 0.0;
        for (std::size_t j = 0; j < query.size(); ++j) {
          const double diff = query[j] - ref[j];
          d2 += diff * diff;
        }
        dist[t] = {d2, t};
      }
      std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(knn->k),
                        dist.end());
      double acc = 0.0;
      for (std::size_t j = 0; j < knn->k; ++j) acc += knn->train_targets[dist[j].second];
      out[i] = acc / static_cast<double>(knn->k);
    }
  } else if (const auto* tree = std::get_if<detail::TreeState>(&value)) {
    for (std::size_t i = 0; i < rows; ++i) out[i] = tree->tree.predict_row(features.row(i));
  } else if (const auto* bag = std::get_if<detail::BaggedState>(&value)) {
    const double inv = 1.0 / static_cast<double>(bag->trees.size());
    for (std::size_t i = 0; i < rows; ++i) {
      double acc = 0.0;
      const auto row = features.row(i);
      for (const auto& t : bag->trees) acc += t.predict_row(row);
      out[i] = acc * inv;
    }
  } else if (const auto* boosted = std::get_if<detail::BoostedState>(&value)) {
    for (std::size_t i = 0; i < rows; ++i) {
      double acc = 0.0;
      const auto row = features.row(i);
      for (const auto& s : boosted->stumps) acc += s.predict_row(row);
      out[i] = boosted->base + boosted->learning_rate * acc;
    }
  }
  return out;
}

namespace {

std::string auto_display_name(const std::string& algorithm,
                              const std::map<std::string, double>& params) {
  if (params.empty()) return algorithm;
  std::string name = algorithm + "(";
  bool first = true;
  for (const auto& [key, value] : params) {
    if (key == "seed") continue;
    if (!first) name += ",";
    name += key + "=" + format_double(value);
    first = false;
  }
  name += ")";
  return name;
}

}  // namespace

std::vector<LearnerSpec> default_pool(std::uint64_t pool_seed) {
  std::vector<LearnerSpec> pool;
  const auto add = [&pool](std::string algorithm, std::map<std::string, double> params) {
    LearnerSpec spec;
    spec.algorithm = std::move(algorithm);
    spec.hyperparameters = std::move(params);
    pool.push_back(std::move(spec));
  };

  add("naive", {});
  add("mean", {});
  add("ols", {});
  for (const double lambda : {0.1, 10.0}) add("ridge", {{"lambda", lambda}});
  for (const double mixing : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    add("elastic-net", {{"lambda", 1.0}, {"mixing", mixing}});
  }
  for (const double k : {1.0, 3.0, 7.0, 15.0}) add("knn", {{"k", k}});
  for (const double depth : {2.0, 4.0, 8.0}) add("tree", {{"max_depth", depth}});
  for (const double trees : {25.0, 100.0}) {
    add("bagged-trees", {{"trees", trees}, {"max_depth", 8.0}, {"min_leaf", 3.0}});
  }
  for (const double iters : {10.0, 50.0, 100.0}) {
    add("boosted-stumps", {{"iterations", iters}, {"learning_rate", 0.1}});
  }

  for (std::size_t i = 0; i < pool.size(); ++i) {
    pool[i].registration_index = i;
    if (pool[i].algorithm == "bagged-trees") {
      // Keep the derived seed exactly representable as a double.
      pool[i].hyperparameters["seed"] =
          static_cast<double>((pool_seed ^ static_cast<std::uint64_t>(i)) & 0xffffffffull);
    }
    pool[i].display_name = auto_display_name(pool[i].algorithm, pool[i].hyperparameters);
  }
  return pool;
}

std::vector<LearnerSpec> load_pool_file(const std::filesystem::path& path,
                                        std::uint64_t pool_seed) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open pool file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("pool file " + path.string() + ": " + e.what());
  }
  if (!doc.is_array() || doc.empty()) {
    throw ConfigError("pool file " + path.string() + ": expected a non-empty JSON array");
  }

  std::vector<LearnerSpec> pool;
  std::set<std::string> seen_names;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    if (!item.is_object() || !item.contains("algorithm") || !item["algorithm"].is_string()) {
      throw ConfigError("pool file entry " + std::to_string(i) +
                        ": expected an object with a string 'algorithm'");
    }
    LearnerSpec spec;
    spec.algorithm = item["algorithm"].get<std::string>();
    if (item.contains("hyperparameters")) {
      if (!item["hyperparameters"].is_object()) {
        throw ConfigError("pool file entry " + std::to_string(i) +
                          ": 'hyperparameters' must be an object");
      }
      for (const auto& [key, value] : item["hyperparameters"].items()) {
        if (!value.is_number()) {
          throw ConfigError("pool file entry " + std::to_string(i) + ": hyperparameter '" + key +
                            "' must be a number");
        }
        spec.hyperparameters[key] = value.get<double>();
      }
    }
    spec.registration_index = i;
    if (spec.algorithm == "bagged-trees" && !spec.hyperparameters.contains("seed")) {
      spec.hyperparameters["seed"] =
          static_cast<double>((pool_seed ^ static_cast<std::uint64_t>(i)) & 0xffffffffull);
    }
    spec.display_name = item.contains("display_name") ? item["display_name"].get<std::string>()
                                                      : auto_display_name(spec.algorithm,
                                                                          spec.hyperparameters);
    if (!seen_names.insert(spec.display_name).second) {
      throw ConfigError("pool file entry " + std::to_string(i) + ": duplicate display name '" +
                        spec.display_name + "'");
    }
    pool.push_back(std::move(spec));
  }
  return pool;
}

}  // namespace tsselect
