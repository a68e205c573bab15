#include "linear.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace tsselect::detail {

namespace {

using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

RowMajorMap map_matrix(const Matrix& m) {
  return RowMajorMap(m.data().data(), static_cast<Eigen::Index>(m.rows()),
                     static_cast<Eigen::Index>(m.cols()));
}

struct Centered {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd x_mean;
  double y_mean = 0.0;
};

Centered center(const Matrix& features, std::span<const double> targets) {
  Centered c;
  c.x = map_matrix(features);
  c.y = Eigen::Map<const Eigen::VectorXd>(targets.data(), static_cast<Eigen::Index>(targets.size()));
  c.x_mean = c.x.colwise().mean();
  c.y_mean = c.y.mean();
  c.x.rowwise() -= c.x_mean.transpose();
  c.y.array() -= c.y_mean;
  return c;
}

LinearFit ridge_on_centered(const Centered& c, double lambda, bool fallback) {
  const Eigen::Index p = c.x.cols();
  Eigen::MatrixXd gram = c.x.transpose() * c.x;
  gram.diagonal().array() += lambda;
  const Eigen::VectorXd beta = gram.ldlt().solve(c.x.transpose() * c.y);
  LinearFit fit;
  fit.coef.assign(beta.data(), beta.data() + p);
  fit.intercept = c.y_mean - c.x_mean.dot(beta);
  fit.fallback = fallback;
  return fit;
}

}  // namespace

LinearFit fit_ols(const Matrix& features, std::span<const double> targets) {
  const Eigen::Index n = static_cast<Eigen::Index>(features.rows());
  const Eigen::Index p = static_cast<Eigen::Index>(features.cols());
  Eigen::MatrixXd design(n, p + 1);
  design.col(0).setOnes();
  design.rightCols(p) = map_matrix(features);
  const Eigen::Map<const Eigen::VectorXd> y(targets.data(), n);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < p + 1) {
    return ridge_on_centered(center(features, targets), 1e-8, true);
  }
  const Eigen::VectorXd beta = qr.solve(y);
  LinearFit fit;
  fit.intercept = beta(0);
  fit.coef.assign(beta.data() + 1, beta.data() + 1 + p);
  return fit;
}

LinearFit fit_ridge(const Matrix& features, std::span<const double> targets, double lambda) {
  return ridge_on_centered(center(features, targets), lambda, false);
}

LinearFit fit_elastic_net(const Matrix& features, std::span<const double> targets, double lambda,
                          double mixing) {
  constexpr double kTol = 1e-8;
  constexpr int kMaxSweeps = 10000;

  const Centered c = center(features, targets);
  const Eigen::Index n = c.x.rows();
  const Eigen::Index p = c.x.cols();
  const double inv_n = 1.0 / static_cast<double>(n);

  Eigen::VectorXd col_ms(p);  // mean square per centered column
  for (Eigen::Index j = 0; j < p; ++j) col_ms(j) = c.x.col(j).squaredNorm() * inv_n;

  const double l1 = lambda * mixing;
  const double l2 = lambda * (1.0 - mixing);

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd residual = c.y;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double max_delta = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (col_ms(j) == 0.0) continue;
      const double rho = inv_n * c.x.col(j).dot(residual) + col_ms(j) * beta(j);
      double updated = 0.0;
      if (rho > l1) {
        updated = (rho - l1) / (col_ms(j) + l2);
      } else if (rho < -l1) {
        updated = (rho + l1) / (col_ms(j) + l2);
      }
      const double delta = updated - beta(j);
      if (delta != 0.0) {
        residual -= delta * c.x.col(j);
        beta(j) = updated;
        max_delta = std::max(max_delta, std::abs(delta));
      }
    }
    if (max_delta < kTol) break;
  }

  LinearFit fit;
  fit.coef.assign(beta.data(), beta.data() + p);
  fit.intercept = c.y_mean - c.x_mean.dot(beta);
  return fit;
}

}  // namespace tsselect::detail
