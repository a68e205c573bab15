#include "tsselect/time_series.hpp"

#include <cmath>
#include <utility>

#include "tsselect/errors.hpp"

namespace tsselect {

TimeSeries::TimeSeries(std::string id, std::vector<double> values, std::string source)
    : id_(std::move(id)), values_(std::move(values)), source_(std::move(source)) {
  if (values_.size() < kMinLength) {
    throw ValidationError("series '" + id_ + "' has " + std::to_string(values_.size()) +
                          " values, minimum is " + std::to_string(kMinLength));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw ValidationError("series '" + id_ + "' has a non-finite value at position " +
                            std::to_string(i));
    }
  }
}

double TimeSeries::mean() const {
  double sum = 0.0;
  for (const double v : values_) sum += v;
  return sum / static_cast<double>(values_.size());
}

double TimeSeries::stddev() const {
  const double m = mean();
  double ss = 0.0;
  for (const double v : values_) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values_.size()));
}

}  // namespace tsselect
