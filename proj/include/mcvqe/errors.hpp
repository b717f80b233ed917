// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace mcvqe {

// Error taxonomy mirrors the CLI exit codes: validation -> 2,
// convergence -> 3, internal consistency -> 4.

class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
  explicit ConvergenceError(const std::string& msg)
      : std::runtime_error(msg) {}
  ConvergenceError(const std::string& msg, Eigen::VectorXd best_point,
                   double grad_norm)
      : std::runtime_error(msg),
        best_point(std::move(best_point)),
        grad_norm(grad_norm) {}

  Eigen::VectorXd best_point;
  double grad_norm = 0.0;
};

class ConsistencyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace mcvqe
