#pragma once

// Test-only reference computations. Nothing here calls the closed-form
// inverses or the optimizer's Jacobian.

#include <cmath>
#include <functional>

#include <Eigen/Core>

#include "radcal/dataset.hpp"
#include "radcal/optimizer.hpp"

namespace radcal::oracle {

/// Inverts an increasing function on [lo, hi] by bisection to full precision.
inline double bisect_inverse(const std::function<double(double)>& forward, double target,
                             double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) {
      break;
    }
    (forward(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Central differences with half the forward step.
inline Eigen::MatrixXd central_jacobian(const Eigen::VectorXd& params,
                                        const CalibrationDataset& data, ModelFamily family) {
  const Eigen::Index m = objective(params, data, family).residuals.size();
  Eigen::MatrixXd jac(m, params.size());
  for (Eigen::Index c = 0; c < params.size(); ++c) {
    const double h = 0.5 * std::max(1e-7, 1e-7 * std::abs(params(c)));
    Eigen::VectorXd plus = params;
    Eigen::VectorXd minus = params;
    plus(c) += h;
    minus(c) -= h;
    jac.col(c) = (objective(plus, data, family).residuals -
                  objective(minus, data, family).residuals) /
                 (plus(c) - minus(c));
  }
  return jac;
}

/// max over columns of |forward - central|_inf / |central|_inf; columns that
/// are identically zero in both count as matching.
inline double max_column_deviation(const Eigen::MatrixXd& forward, const Eigen::MatrixXd& central) {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < central.cols(); ++c) {
    const double scale = central.col(c).cwiseAbs().maxCoeff();
    const double diff = (forward.col(c) - central.col(c)).cwiseAbs().maxCoeff();
    if (scale == 0.0) {
      worst = std::max(worst, diff == 0.0 ? 0.0 : 1.0);
      continue;
    }
    worst = std::max(worst, diff / scale);
  }
  return worst;
}

}  // namespace radcal::oracle
