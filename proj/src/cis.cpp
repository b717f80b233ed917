// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#include "mcvqe/cis.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "mcvqe/errors.hpp"

namespace mcvqe {

namespace {
constexpr double kTailTol = 1e-12;

void check_unit(const Eigen::VectorXd& c) {
  if (c.size() < 2)
    throw ValidationError("CIS coefficients need at least 2 entries");
  if (std::abs(c.norm() - 1.0) > 1e-10)
    throw ValidationError("CIS coefficient vector is not normalized");
}

double last_sign(const Eigen::VectorXd& c) {
  return c[c.size() - 1] < 0.0 ? -1.0 : 1.0;
}
}  // namespace

CisAngles angles_from_coefficients(const Eigen::VectorXd& c) {
  check_unit(c);
  const int n = static_cast<int>(c.size()) - 1;
  CisAngles out;
  out.theta.resize(n);
  double tail2 = c.squaredNorm();
  for (int m = 0; m < n; ++m) {
    const double tail = std::sqrt(std::max(tail2, 0.0));
    if (tail < kTailTol) {
      out.theta[m] = 0.0;
    } else {
      const double pm = (m == n - 1) ? last_sign(c) : 1.0;
      out.theta[m] = pm * std::acos(std::clamp(c[m] / tail, -1.0, 1.0));
    }
    tail2 -= c[m] * c[m];
  }
  return out;
}

Eigen::VectorXd jacobian_contract(const Eigen::VectorXd& c,
                                  const Eigen::VectorXd& d) {
  check_unit(c);
  const int n = static_cast<int>(c.size()) - 1;
  if (d.size() != n)
    throw ValidationError("jacobian_contract: d must have N entries");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n + 1);
  for (int m = 0; m < n; ++m) {
    double t1 = 0.0;  // sum_{L=M+1}^{N}
    for (int l = m + 1; l <= n; ++l) t1 += c[l] * c[l];
    const double t0 = t1 + c[m] * c[m];  // sum_{K=M}^{N}
    const double root = std::sqrt(t1);
    if (root < kTailTol) continue;  // degenerate tail: zero row
    const double pm = (m == n - 1) ? last_sign(c) : 1.0;
    out[m] += d[m] * pm * (-1.0 / root);
    for (int i = m; i <= n; ++i)
      out[i] += d[m] * pm * c[m] * c[i] / (root * t0);
  }
  return out;
}

Circuit build_cis_circuit(const CisAngles& angles) {
  const int n = static_cast<int>(angles.theta.size());
  if (n < 1) throw ValidationError("build_cis_circuit: need N >= 1 angles");
  Circuit circuit(n);
  circuit.add_ry(0, angles.theta[0]);
  for (int m = 1; m < n; ++m) circuit.add_fy(m - 1, m, angles.theta[m]);
  return circuit;
}

void set_cis_angles(Circuit& circuit, const CisAngles& angles) {
  const int n = static_cast<int>(angles.theta.size());
  if (circuit.num_parameters() < n)
    throw ValidationError("set_cis_angles: circuit has too few parameters");
  for (int m = 0; m < n; ++m) circuit.set_parameter(m, angles.theta[m]);
}

double cis_angle_gradient(const Circuit& circuit, const Observable& obs, int m,
                          std::span<const SiteShift> base) {
  return shift_gradient(circuit, obs, m, base);
}

void fix_eigenvector_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index imax = 0;
    vectors.col(j).cwiseAbs().maxCoeff(&imax);
    if (vectors(imax, j) < 0.0) vectors.col(j) = -vectors.col(j);
  }
}

CisStates solve_cis(const Eigen::MatrixXd& h_cis) {
  if (h_cis.rows() != h_cis.cols())
    throw ValidationError("solve_cis: matrix must be square");
  if ((h_cis - h_cis.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw ValidationError("solve_cis: CIS Hamiltonian is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h_cis);
  if (es.info() != Eigen::Success)
    throw ConvergenceError("solve_cis: eigensolver failed");
  CisStates out;
  out.energies = es.eigenvalues();
  out.c = es.eigenvectors();
  fix_eigenvector_signs(out.c);
  // residual certificate
  const double resid =
      (h_cis * out.c - out.c * out.energies.asDiagonal()).cwiseAbs().maxCoeff();
  if (resid > 1e-10)
    throw ConsistencyError("solve_cis: eigenpair residual " +
                           std::to_string(resid));
  return out;
}

}  // namespace mcvqe
