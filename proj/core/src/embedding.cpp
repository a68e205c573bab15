#include "tsselect/embedding.hpp"

#include <cmath>
#include <string>

#include "tsselect/errors.hpp"

namespace tsselect {

std::size_t floor_frac(double frac, std::size_t n) {
  return static_cast<std::size_t>(std::floor(frac * static_cast<double>(n) + 1e-9));
}

std::size_t ceil_frac(double frac, std::size_t n) {
  return static_cast<std::size_t>(std::ceil(frac * static_cast<double>(n) - 1e-9));
}

EmbeddedDataset EmbeddedDataset::slice(std::size_t begin, std::size_t end) const {
  EmbeddedDataset out;
  out.features = features.slice_rows(begin, end);
  out.targets.assign(targets.begin() + static_cast<std::ptrdiff_t>(begin),
                     targets.begin() + static_cast<std::ptrdiff_t>(end));
  out.lag_order = lag_order;
  out.origin.assign(origin.begin() + static_cast<std::ptrdiff_t>(begin),
                    origin.begin() + static_cast<std::ptrdiff_t>(end));
  return out;
}

EmbeddedDataset embed(const TimeSeries& series, std::size_t lag_order) {
  const std::size_t n = series.size();
  if (lag_order < 1 || lag_order + 10 > n) {
    throw EmbeddingError("lag order " + std::to_string(lag_order) +
                         " out of range for series of length " + std::to_string(n) +
                         " (need 1 <= p <= n - 10)");
  }
  const std::size_t rows = n - lag_order;
  EmbeddedDataset out;
  out.lag_order = lag_order;
  out.features = Matrix(rows, lag_order);
  out.targets.resize(rows);
  out.origin.resize(rows);
  const auto& y = series.values();
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t t = lag_order + i;
    out.origin[i] = t;
    out.targets[i] = y[t];
    for (std::size_t j = 0; j < lag_order; ++j) {
      out.features(i, j) = y[t - j - 1];
    }
  }
  return out;
}

Partition partition(const EmbeddedDataset& dataset, double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw PartitionError("split ratio must lie in (0,1), got " + std::to_string(ratio));
  }
  const std::size_t rows = dataset.rows();
  const std::size_t cut = floor_frac(ratio, rows);
  if (cut < 1 || cut >= rows) {
    throw PartitionError("degenerate split: ratio " + std::to_string(ratio) + " over " +
                         std::to_string(rows) + " rows leaves an empty side");
  }
  Partition out;
  out.estimation = dataset.slice(0, cut);
  out.test = dataset.slice(cut, rows);
  out.ratio = ratio;
  return out;
}

}  // namespace tsselect
