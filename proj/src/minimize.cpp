// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#include "mcvqe/minimize.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace mcvqe {

namespace {
double inf_norm(const Eigen::VectorXd& v) {
  return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}
}  // namespace

MinimizeResult minimize(const ValueGradientFn& fg, const HessianFn& hessian,
                        Eigen::VectorXd x0, double gtol, int max_iter) {
  MinimizeResult res;
  res.x = std::move(x0);
  const int dim = static_cast<int>(res.x.size());
  res.gradient.resize(dim);
  res.value = fg(res.x, res.gradient);
  if (dim == 0 || inf_norm(res.gradient) <= gtol) {
    res.converged = true;
    return res;
  }

  // Phase 1: BFGS (inverse-Hessian update) with Armijo backtracking.
  const double bfgs_gtol = std::max(gtol, 1e-9);
  Eigen::MatrixXd binv = Eigen::MatrixXd::Identity(dim, dim);
  Eigen::VectorXd g = res.gradient;
  double f = res.value;
  while (res.iterations < max_iter && inf_norm(g) > bfgs_gtol) {
    Eigen::VectorXd p = -(binv * g);
    double slope = g.dot(p);
    if (!(slope < 0.0)) {  // not a descent direction: reset
      binv.setIdentity();
      p = -g;
      slope = g.dot(p);
    }
    double step = 1.0;
    Eigen::VectorXd x_new, g_new(dim);
    double f_new = f;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      x_new = res.x + step * p;
      f_new = fg(x_new, g_new);
      if (f_new <= f + 1e-4 * step * slope ||
          inf_norm(g_new) < 0.5 * inf_norm(g)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    ++res.iterations;
    if (!accepted) break;  // stalled at round-off; the polish phase takes over
    const Eigen::VectorXd s = x_new - res.x;
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-14 * s.norm() * y.norm()) {
      const Eigen::VectorXd by = binv * y;
      const double yby = y.dot(by);
      binv += ((sy + yby) / (sy * sy)) * (s * s.transpose()) -
              (by * s.transpose() + s * by.transpose()) / sy;
    }
    res.x = x_new;
    f = f_new;
    g = g_new;
  }

  // Phase 2: Newton polish on the exact Hessian; eigenvalue magnitudes are
  // floored so indefinite or singular directions damp instead of exploding.
  for (int it = 0; it < 80 && res.iterations < max_iter; ++it) {
    if (inf_norm(g) <= gtol) break;
    const Eigen::MatrixXd h = hessian(res.x);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (h + h.transpose()));
    const Eigen::VectorXd w =
        es.eigenvalues().cwiseAbs().cwiseMax(1e-10);
    const Eigen::VectorXd p =
        -(es.eigenvectors() * ((es.eigenvectors().transpose() * g).cwiseQuotient(w)));
    double step = 1.0;
    bool accepted = false;
    Eigen::VectorXd x_new, g_new(dim);
    double f_new = f;
    for (int ls = 0; ls < 30; ++ls) {
      x_new = res.x + step * p;
      f_new = fg(x_new, g_new);
      if (inf_norm(g_new) < inf_norm(g) || f_new < f) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    ++res.iterations;
    if (!accepted) break;  // gradient is at its round-off floor
    res.x = x_new;
    f = f_new;
    g = g_new;
  }

  res.value = f;
  res.gradient = g;
  res.converged = inf_norm(g) <= gtol;
  return res;
}

}  // namespace mcvqe
