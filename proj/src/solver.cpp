// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#include "mcvqe/solver.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "mcvqe/errors.hpp"
#include "mcvqe/minimize.hpp"
#include "mcvqe/parallel.hpp"

namespace mcvqe {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

int append_entangler(Circuit& circuit, const EntanglerLayout& layout) {
  const int n = circuit.num_qubits();
  const int before = circuit.num_parameters();
  switch (layout.kind) {
    case EntanglerLayout::Kind::Identity:
      break;
    case EntanglerLayout::Kind::Truncated:
      for (int q = 0; q < n; ++q) circuit.add_ry(q, 0.0);
      break;
    case EntanglerLayout::Kind::So4Chain: {
      if (layout.layers < 1)
        throw ValidationError("entangler: layers must be >= 1");
      for (int q = 0; q < n; ++q) circuit.add_ry(q, 0.0);
      for (int layer = 0; layer < layout.layers; ++layer) {
        for (int parity = 0; parity < 2; ++parity) {
          for (int a = parity; a + 1 < n; a += 2) {
            circuit.add_cnot(a, a + 1);
            circuit.add_ry(a, 0.0);
            circuit.add_ry(a + 1, 0.0);
            circuit.add_cnot(a, a + 1);
            circuit.add_ry(a, 0.0);
            circuit.add_ry(a + 1, 0.0);
          }
        }
      }
      break;
    }
  }
  return circuit.num_parameters() - before;
}

McVqe::McVqe(PauliCoeffs hamiltonian, PairList pairs, CisStates cis,
             EntanglerLayout layout, McVqeOptions options)
    : hamiltonian_(std::move(hamiltonian)),
      pairs_(std::move(pairs)),
      cis_(std::move(cis)),
      layout_(layout),
      options_(options),
      prototype_(1) {
  const int n = pairs_.num_monomers();
  if (cis_.c.rows() != n + 1)
    throw ValidationError("McVqe: CIS states do not match the monomer count");
  if (options_.num_states < 1 || options_.num_states > n + 1)
    throw ValidationError("McVqe: num_states must be in [1, N+1]");
  observable_ = to_observable(hamiltonian_, pairs_);
  basis_ = pauli_basis(pairs_);
  CisAngles zero;
  zero.theta = Eigen::VectorXd::Zero(n);
  prototype_ = build_cis_circuit(zero);
  num_cis_params_ = prototype_.num_parameters();
  num_vqe_params_ = append_entangler(prototype_, layout_);
}

Circuit McVqe::configured(const Eigen::VectorXd& theta_g,
                          const CisAngles& angles) const {
  if (theta_g.size() != num_vqe_params_)
    throw ValidationError("McVqe: entangler parameter count mismatch");
  Circuit c = prototype_;
  set_cis_angles(c, angles);
  for (int g = 0; g < num_vqe_params_; ++g)
    c.set_parameter(num_cis_params_ + g, theta_g[g]);
  return c;
}

CisAngles McVqe::state_angles(int xi) const {
  return angles_from_coefficients(cis_.c.col(xi));
}

double McVqe::energy_epsilon(const Eigen::VectorXd& theta_g,
                             const CisAngles& angles) const {
  return observe(configured(theta_g, angles), observable_);
}

std::pair<double, Eigen::VectorXd> McVqe::sa_energy_and_gradient(
    const Eigen::VectorXd& theta_g) const {
  const int ns = options_.num_states;
  const int ng = num_vqe_params_;
  Eigen::MatrixXd per_state(ng + 1, ns);
  // task (xi, k): k==0 the plain energy, k>0 the gradient entry k-1
  parallel_for(ns * (ng + 1), [&](int task) {
    const int xi = task / (ng + 1);
    const int k = task % (ng + 1);
    const Circuit circuit = configured(theta_g, state_angles(xi));
    if (k == 0)
      per_state(0, xi) = observe(circuit, observable_);
    else
      per_state(k, xi) =
          shift_gradient(circuit, observable_, vqe_parameter_id(k - 1));
  });
  double energy = 0.0;
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(ng);
  for (int xi = 0; xi < ns; ++xi) {
    energy += per_state(0, xi);
    grad += per_state.col(xi).tail(ng);
  }
  return {energy / ns, grad / ns};
}

Eigen::MatrixXd McVqe::sa_hessian(const Eigen::VectorXd& theta_g) const {
  const int ns = options_.num_states;
  const int ng = num_vqe_params_;
  std::vector<std::pair<int, int>> entries;
  for (int a = 0; a < ng; ++a)
    for (int b = a; b < ng; ++b) entries.emplace_back(a, b);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(ng, ng);
  std::vector<double> slot(entries.size() * ns, 0.0);
  parallel_for(static_cast<int>(entries.size()) * ns, [&](int task) {
    const int xi = task % ns;
    const auto [a, b] = entries[task / ns];
    const Circuit circuit = configured(theta_g, state_angles(xi));
    slot[task] = shift_hessian(circuit, observable_, vqe_parameter_id(a),
                               vqe_parameter_id(b));
  });
  for (std::size_t e = 0; e < entries.size(); ++e) {
    double acc = 0.0;
    for (int xi = 0; xi < ns; ++xi) acc += slot[e * ns + xi];
    const auto [a, b] = entries[e];
    h(a, b) = acc / ns;
    h(b, a) = h(a, b);
  }
  return h;
}

Eigen::VectorXd McVqe::optimize_sa_vqe(const Eigen::VectorXd* warm,
                                       int* iterations,
                                       double* grad_norm) const {
  Eigen::VectorXd x0 = warm != nullptr
                           ? *warm
                           : Eigen::VectorXd::Zero(num_vqe_params_);
  if (x0.size() != num_vqe_params_)
    throw ValidationError("optimize_sa_vqe: warm start size mismatch");
  auto fg = [this](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    auto [e, grad] = sa_energy_and_gradient(x);
    g = grad;
    return e;
  };
  auto hess = [this](const Eigen::VectorXd& x) { return sa_hessian(x); };
  MinimizeResult res =
      minimize(fg, hess, std::move(x0), options_.gtol, options_.max_iter);
  if (iterations) *iterations = res.iterations;
  const double gnorm =
      res.gradient.size() ? res.gradient.cwiseAbs().maxCoeff() : 0.0;
  if (grad_norm) *grad_norm = gnorm;
  if (!res.converged)
    throw ConvergenceError("SA-VQE did not reach gtol; |grad|_inf = " +
                               std::to_string(gnorm),
                           res.x, gnorm);
  return res.x;
}

Eigen::MatrixXd McVqe::subspace_hamiltonian(
    const Eigen::VectorXd& theta_g) const {
  const int ns = options_.num_states;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(ns, ns);
  for (int xi = 0; xi < ns; ++xi)
    h(xi, xi) = energy_epsilon(theta_g, state_angles(xi));
  for (int xi = 1; xi < ns; ++xi) {
    for (int xj = 0; xj < xi; ++xj) {
      const Eigen::VectorXd plus =
          (cis_.c.col(xi) + cis_.c.col(xj)) * kInvSqrt2;
      const Eigen::VectorXd minus =
          (cis_.c.col(xi) - cis_.c.col(xj)) * kInvSqrt2;
      const double val =
          (energy_epsilon(theta_g, angles_from_coefficients(plus)) -
           energy_epsilon(theta_g, angles_from_coefficients(minus))) /
          2.0;
      h(xi, xj) = val;
      h(xj, xi) = val;
    }
  }
  return h;
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> McVqe::diagonalize_subspace(
    const Eigen::MatrixXd& h_sub) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (h_sub + h_sub.transpose()));
  if (es.info() != Eigen::Success)
    throw ConvergenceError("diagonalize_subspace: eigensolver failed");
  Eigen::MatrixXd v = es.eigenvectors();
  fix_eigenvector_signs(v);
  return {v, es.eigenvalues()};
}

Eigen::MatrixXd McVqe::generating_states(const CisStates& cis,
                                         const Eigen::MatrixXd& v) {
  return cis.c.leftCols(v.rows()) * v;
}

McVqeSolution McVqe::solve(const Eigen::VectorXd* warm) const {
  McVqeSolution sol;
  sol.theta = optimize_sa_vqe(warm, &sol.iterations, &sol.grad_norm);
  sol.subspace_h = subspace_hamiltonian(sol.theta);
  std::tie(sol.eigenvectors, sol.energies) =
      diagonalize_subspace(sol.subspace_h);
  sol.generating = generating_states(cis_, sol.eigenvectors);
  for (int th = 0; th < options_.num_states; ++th) {
    const double eps = energy_epsilon(
        sol.theta, angles_from_coefficients(sol.generating.col(th)));
    if (std::abs(eps - sol.energies[th]) > 1e-9)
      throw ConsistencyError(
          "generating-state energy check failed for state " +
          std::to_string(th) + ": |eps - E| = " +
          std::to_string(std::abs(eps - sol.energies[th])));
  }
  return sol;
}

PauliCoeffs McVqe::measure_densities(const Eigen::VectorXd& theta_g,
                                     const CisAngles& angles,
                                     std::span<const SiteShift> shifts) const {
  const Circuit circuit = configured(theta_g, angles);
  return coeffs_from_measurements(measure(circuit, basis_, shifts), pairs_);
}

}  // namespace mcvqe
