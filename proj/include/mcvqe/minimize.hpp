// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include <Eigen/Core>

namespace mcvqe {

struct MinimizeResult {
  Eigen::VectorXd x;
  double value = 0.0;
  Eigen::VectorXd gradient;
  int iterations = 0;
  bool converged = false;
};

using ValueGradientFn =
    std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;
using HessianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

// BFGS with Armijo backtracking down to a loose gradient norm, then Newton
// polish on the exact Hessian to the requested infinity-norm tolerance.
// Analytic (not finite-difference) gradients are assumed, which is what lets
// the polish phase reach ~1e-12. Does not throw on non-convergence; the
// caller inspects `converged`.
MinimizeResult minimize(const ValueGradientFn& fg, const HessianFn& hessian,
                        Eigen::VectorXd x0, double gtol, int max_iter);

}  // namespace mcvqe
