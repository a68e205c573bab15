#include "tsselect/resampling.hpp"

#include <algorithm>
#include <numeric>

#include "tsselect/embedding.hpp"
#include "tsselect/errors.hpp"
#include "tsselect/rng.hpp"

namespace tsselect {

std::string_view method_id(Method method) {
  switch (method) {
    case Method::cv: return "CV";
    case Method::cv_blocked: return "CV-Bl";
    case Method::cv_modified: return "CV-Mod";
    case Method::cv_hv_blocked: return "CV-hvBl";
    case Method::holdout: return "Holdout";
    case Method::repeated_holdout: return "Rep-Holdout";
    case Method::preq_blocks: return "Preq-Bls";
    case Method::preq_sliding_blocks: return "Preq-Sld-Bls";
    case Method::preq_blocks_trim: return "Preq-Bls-Trim";
    case Method::preq_blocks_gap: return "Preq-Bls-Gap";
  }
  throw ConfigError("unknown method enum value");
}

Method parse_method(std::string_view id) {
  for (const Method m : kAllMethods) {
    if (method_id(m) == id) return m;
  }
  throw ConfigError("unknown estimator id '" + std::string(id) + "'");
}

ResamplerSpec ResamplerSpec::defaults_for(Method method, std::size_t fold_count,
                                          std::size_t lag_order, std::uint64_t seed) {
  ResamplerSpec spec;
  spec.method = method;
  spec.fold_count = fold_count;
  spec.lag_order = lag_order;
  spec.seed = seed;
  if (method == Method::repeated_holdout) {
    spec.train_fraction = 0.6;
    spec.test_fraction = 0.1;
  }
  return spec;
}

std::vector<std::size_t> fold_sizes(std::size_t rows, std::size_t fold_count) {
  std::vector<std::size_t> sizes(fold_count, rows / fold_count);
  for (std::size_t k = 0; k < rows % fold_count; ++k) ++sizes[k];
  return sizes;
}

namespace {

std::vector<std::size_t> fold_offsets(const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> offsets(sizes.size() + 1, 0);
  for (std::size_t k = 0; k < sizes.size(); ++k) offsets[k + 1] = offsets[k] + sizes[k];
  return offsets;
}

std::vector<std::size_t> iota_range(std::size_t begin, std::size_t end) {
  std::vector<std::size_t> out(end - begin);
  std::iota(out.begin(), out.end(), begin);
  return out;
}

void require_fold_basics(std::size_t rows, const ResamplerSpec& spec, std::string_view id) {
  if (spec.fold_count < 2) {
    throw PlanError(std::string(id) + ": fold count must be >= 2, got " +
                    std::to_string(spec.fold_count));
  }
  if (rows < 2 * spec.fold_count) {
    throw PlanError(std::string(id) + ": need at least 2K rows (K=" +
                    std::to_string(spec.fold_count) + "), got " + std::to_string(rows));
  }
}

// Shuffled fold assignment shared by CV and CV-Mod.
std::vector<std::vector<std::size_t>> shuffled_folds(std::size_t rows, const ResamplerSpec& spec) {
  std::vector<std::size_t> perm = iota_range(0, rows);
  Rng rng(spec.seed);
  rng.shuffle(perm);
  const auto sizes = fold_sizes(rows, spec.fold_count);
  const auto offsets = fold_offsets(sizes);
  std::vector<std::vector<std::size_t>> folds(spec.fold_count);
  for (std::size_t k = 0; k < spec.fold_count; ++k) {
    folds[k].assign(perm.begin() + static_cast<std::ptrdiff_t>(offsets[k]),
                    perm.begin() + static_cast<std::ptrdiff_t>(offsets[k + 1]));
    std::sort(folds[k].begin(), folds[k].end());
  }
  return folds;
}

SplitPlan kfold_plan(std::size_t rows, const ResamplerSpec& spec,
                     const std::vector<std::vector<std::size_t>>& folds) {
  SplitPlan plan{spec.method, {}, spec, rows};
  plan.iterations.reserve(spec.fold_count);
  for (std::size_t k = 0; k < spec.fold_count; ++k) {
    PlanIteration it;
    it.test = folds[k];
    for (std::size_t j = 0; j < spec.fold_count; ++j) {
      if (j == k) continue;
      it.train.insert(it.train.end(), folds[j].begin(), folds[j].end());
    }
    std::sort(it.train.begin(), it.train.end());
    plan.iterations.push_back(std::move(it));
  }
  return plan;
}

ResamplerSpec with_method(const ResamplerSpec& spec, Method method) {
  ResamplerSpec out = spec;
  out.method = method;
  return out;
}

}  // namespace

std::vector<std::size_t> purge_within(const std::vector<std::size_t>& train,
                                      const std::vector<std::size_t>& test,
                                      std::size_t distance) {
  std::vector<std::size_t> kept;
  kept.reserve(train.size());
  for (const std::size_t i : train) {
    const std::size_t lo = i > distance ? i - distance : 0;
    const std::size_t hi = i + distance;
    // first test index >= lo; within window iff also <= hi
    const auto it = std::lower_bound(test.begin(), test.end(), lo);
    if (it == test.end() || *it > hi) kept.push_back(i);
  }
  return kept;
}

SplitPlan cv_shuffled(std::size_t rows, const ResamplerSpec& raw) {
  const ResamplerSpec spec = with_method(raw, Method::cv);
  require_fold_basics(rows, spec, "CV");
  return kfold_plan(rows, spec, shuffled_folds(rows, spec));
}

SplitPlan cv_blocked(std::size_t rows, const ResamplerSpec& raw) {
  const ResamplerSpec spec = with_method(raw, Method::cv_blocked);
  require_fold_basics(rows, spec, "CV-Bl");
  const auto sizes = fold_sizes(rows, spec.fold_count);
  const auto offsets = fold_offsets(sizes);
  std::vector<std::vector<std::size_t>> folds(spec.fold_count);
  for (std::size_t k = 0; k < spec.fold_count; ++k) {
    folds[k] = iota_range(offsets[k], offsets[k + 1]);
  }
  return kfold_plan(rows, spec, folds);
}

SplitPlan cv_modified(std::size_t rows, const ResamplerSpec& raw) {
  const ResamplerSpec spec = with_method(raw, Method::cv_modified);
  require_fold_basics(rows, spec, "CV-Mod");
  if (spec.lag_order < 1) throw PlanError("CV-Mod: lag order must be >= 1");
  SplitPlan plan = kfold_plan(rows, spec, shuffled_folds(rows, spec));
  for (std::size_t k = 0; k < plan.iterations.size(); ++k) {
    auto& it = plan.iterations[k];
    it.train = purge_within(it.train, it.test, spec.lag_order);
    if (it.train.size() < spec.lag_order + 1) {
      throw PlanError("CV-Mod: purging leaves iteration " + std::to_string(k) + " with " +
                      std::to_string(it.train.size()) + " training rows (need >= p+1 = " +
                      std::to_string(spec.lag_order + 1) + ")");
    }
  }
  return plan;
}

SplitPlan cv_hv_blocked(std::size_t rows, const ResamplerSpec& raw) {
  const ResamplerSpec spec = with_method(raw, Method::cv_hv_blocked);
  require_fold_basics(rows, spec, "CV-hvBl");
  if (spec.lag_order < 1) throw PlanError("CV-hvBl: lag order must be >= 1");
  SplitPlan plan = cv_blocked(rows, spec);
  plan.method = Method::cv_hv_blocked;
  plan.params = spec;
  for (std::size_t k = 0; k < plan.iterations.size(); ++k) {
    auto& it = plan.iterations[k];
    // The test block is contiguous; drop the p rows on each side of it.
    it.train = purge_within(it.train, it.test, spec.lag_order);
    if (it.train.size() < spec.lag_order + 1) {
      throw PlanError("CV-hvBl: gap removal leaves iteration " + std::to_string(k) + " with " +
                      std::to_string(it.train.size()) + " training rows (need >= p+1 = " +
                      std::to_string(spec.lag_order + 1) + ")");
    }
  }
  return plan;
}

SplitPlan holdout(std::size_t rows, const ResamplerSpec& raw) {
  const ResamplerSpec spec = with_method(raw, Method::holdout);
  if (rows < 10) {
    throw PlanError("Holdout: need at least 10 rows, got " + std::to_string(rows));
  }
  const std::size_t cut = floor_frac(spec.train_fraction, rows);
  if (cut < 1 || cut >= rows) {
    throw PlanError("Holdout: train fraction " + std::to_string(spec.train_fraction) +
                    " leaves an empty side for " + std::to_string(rows) + " rows");
  }
  SplitPlan plan{Method::holdout, {}, spec, rows};
  plan.iterations.push_back({iota_range(0, cut), iota_range(cut, rows)});
  return plan;
}

SplitPlan repeated_holdout(std::size_t rows, const ResamplerSpec& raw) {
  const ResamplerSpec spec = with_method(raw, Method::repeated_holdout);
  const std::size_t train_len = floor_frac(spec.train_fraction, rows);
  const std::size_t test_len = floor_frac(spec.test_fraction, rows);
  if (train_len < 1 || test_len < 1 || train_len + test_len > rows) {
    throw PlanError("Rep-Holdout: window fractions " + std::to_string(spec.train_fraction) +
                    "/" + std::to_string(spec.test_fraction) + " infeasible for " +
                    std::to_string(rows) + " rows");
  }
  SplitPlan plan{Method::repeated_holdout, {}, spec, rows};
  Rng rng(spec.seed);
  const std::size_t lo = train_len;
  const std::size_t hi = rows - test_len;
  for (std::size_t k = 0; k < spec.fold_count; ++k) {
    const std::size_t anchor = static_cast<std::size_t>(rng.between(lo, hi));
    plan.iterations.push_back(
        {iota_range(anchor - train_len, anchor), iota_range(anchor, anchor + test_len)});
  }
  return plan;
}

SplitPlan preq_blocks(std::size_t rows, const ResamplerSpec& raw) {
  const ResamplerSpec spec = with_method(raw, Method::preq_blocks);
  require_fold_basics(rows, spec, "Preq-Bls");
  const auto offsets = fold_offsets(fold_sizes(rows, spec.fold_count));
  SplitPlan plan{Method::preq_blocks, {}, spec, rows};
  for (std::size_t i = 1; i < spec.fold_count; ++i) {
    plan.iterations.push_back({iota_range(0, offsets[i]), iota_range(offsets[i], offsets[i + 1])});
  }
  return plan;
}

SplitPlan preq_sliding_blocks(std::size_t rows, const ResamplerSpec& raw) {
  const ResamplerSpec spec = with_method(raw, Method::preq_sliding_blocks);
  require_fold_basics(rows, spec, "Preq-Sld-Bls");
  const auto offsets = fold_offsets(fold_sizes(rows, spec.fold_count));
  SplitPlan plan{Method::preq_sliding_blocks, {}, spec, rows};
  for (std::size_t i = 1; i < spec.fold_count; ++i) {
    plan.iterations.push_back(
        {iota_range(offsets[i - 1], offsets[i]), iota_range(offsets[i], offsets[i + 1])});
  }
  return plan;
}

SplitPlan preq_blocks_trim(std::size_t rows, const ResamplerSpec& raw) {
  const ResamplerSpec spec = with_method(raw, Method::preq_blocks_trim);
  SplitPlan plan = preq_blocks(rows, spec);
  plan.method = Method::preq_blocks_trim;
  plan.params = spec;
  const std::size_t total = plan.iterations.size();
  std::size_t keep = ceil_frac(spec.trim_keep_fraction, total);
  keep = std::max<std::size_t>(1, std::min(keep, total));
  plan.iterations.erase(plan.iterations.begin(),
                        plan.iterations.begin() + static_cast<std::ptrdiff_t>(total - keep));
  return plan;
}

SplitPlan preq_blocks_gap(std::size_t rows, const ResamplerSpec& raw) {
  const ResamplerSpec spec = with_method(raw, Method::preq_blocks_gap);
  if (spec.fold_count < 3) {
    throw PlanError("Preq-Bls-Gap: fold count must be >= 3");
  }
  if (rows < 3 * spec.fold_count) {
    throw PlanError("Preq-Bls-Gap: need at least 3K rows (K=" + std::to_string(spec.fold_count) +
                    "), got " + std::to_string(rows));
  }
  const auto offsets = fold_offsets(fold_sizes(rows, spec.fold_count));
  SplitPlan plan{Method::preq_blocks_gap, {}, spec, rows};
  for (std::size_t i = 1; i + 1 < spec.fold_count; ++i) {
    plan.iterations.push_back(
        {iota_range(0, offsets[i]), iota_range(offsets[i + 1], offsets[i + 2])});
  }
  return plan;
}

SplitPlan make_plan(std::size_t rows, const ResamplerSpec& spec) {
  switch (spec.method) {
    case Method::cv: return cv_shuffled(rows, spec);
    case Method::cv_blocked: return cv_blocked(rows, spec);
    case Method::cv_modified: return cv_modified(rows, spec);
    case Method::cv_hv_blocked: return cv_hv_blocked(rows, spec);
    case Method::holdout: return holdout(rows, spec);
    case Method::repeated_holdout: return repeated_holdout(rows, spec);
    case Method::preq_blocks: return preq_blocks(rows, spec);
    case Method::preq_sliding_blocks: return preq_sliding_blocks(rows, spec);
    case Method::preq_blocks_trim: return preq_blocks_trim(rows, spec);
    case Method::preq_blocks_gap: return preq_blocks_gap(rows, spec);
  }
  throw ConfigError("unknown method enum value");
}

}  // namespace tsselect
