#pragma once

#include <span>
#include <vector>

#include "tsselect/matrix.hpp"

namespace tsselect::detail {

struct LinearFit {
  std::vector<double> coef;
  double intercept = 0.0;
  bool fallback = false;  // singular OLS rescued with a tiny ridge penalty
};

LinearFit fit_ols(const Matrix& features, std::span<const double> targets);

/// Ridge with an unpenalized intercept, solved on centered data.
LinearFit fit_ridge(const Matrix& features, std::span<const double> targets, double lambda);

/// Elastic net by coordinate descent on centered data, glmnet-style
/// objective (1/2n)||y - Xb||^2 + lambda * (mixing*|b|_1 + (1-mixing)/2*|b|_2^2).
/// Features are not rescaled. Tolerance 1e-8 on the coefficient change,
/// at most 10000 sweeps.
LinearFit fit_elastic_net(const Matrix& features, std::span<const double> targets, double lambda,
                          double mixing);

}  // namespace tsselect::detail
