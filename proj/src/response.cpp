// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#include "mcvqe/response.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "mcvqe/errors.hpp"
#include "mcvqe/parallel.hpp"

namespace mcvqe {

namespace {
constexpr double kQuarterPi = 0.78539816339744830961;
}

PauliCoeffs unrelaxed_densities(const McVqe& engine, const McVqeSolution& sol,
                                int state) {
  return engine.measure_densities(
      sol.theta, angles_from_coefficients(sol.generating.col(state)));
}

double se_response(const McVqeSolution& sol, int state) {
  const Eigen::MatrixXd resid =
      sol.subspace_h * sol.eigenvectors -
      sol.eigenvectors * sol.energies.asDiagonal();
  const double value =
      std::abs(sol.eigenvectors.col(state).dot(resid.col(state)));
  if (value > 1e-10)
    throw ConsistencyError(
        "subspace-eigenstate Lagrangian residual " + std::to_string(value) +
        " for state " + std::to_string(state));
  return value;
}

Eigen::VectorXd cp_sa_vqe_rhs(const McVqe& engine, const McVqeSolution& sol,
                              int state) {
  const int ng = engine.num_vqe_parameters();
  const CisAngles angles =
      angles_from_coefficients(sol.generating.col(state));
  const Circuit circuit = engine.configured(sol.theta, angles);
  Eigen::VectorXd g(ng);
  parallel_for(ng, [&](int k) {
    g[k] = shift_gradient(circuit, engine.observable(),
                          engine.vqe_parameter_id(k));
  });
  return g;
}

Eigen::MatrixXd cp_sa_vqe_lhs(const McVqe& engine, const McVqeSolution& sol) {
  Eigen::MatrixXd h = engine.sa_hessian(sol.theta);
  return 0.5 * (h + h.transpose());
}

Eigen::VectorXd solve_cp_sa_vqe(const Eigen::MatrixXd& hessian,
                                const Eigen::VectorXd& rhs, double floor,
                                bool* regularized) {
  const int ng = static_cast<int>(rhs.size());
  if (regularized) *regularized = false;
  if (ng == 0) return Eigen::VectorXd();
  Eigen::MatrixXd h = hessian;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.eigenvalues().minCoeff() < floor) {
    h += floor * Eigen::MatrixXd::Identity(ng, ng);
    if (regularized) *regularized = true;
  }
  const Eigen::VectorXd sol = h.ldlt().solve(-rhs);
  const double resid = (h * sol + rhs).norm();
  if (resid > 1e-9 * std::max(1.0, rhs.norm()))
    throw ConvergenceError(
        "CP-SA-VQE solve residual " + std::to_string(resid) +
        "; Hessian spectrum [" + std::to_string(es.eigenvalues().minCoeff()) +
        ", " + std::to_string(es.eigenvalues().maxCoeff()) + "]");
  return sol;
}

PauliCoeffs vqe_response_density(const McVqe& engine, const McVqeSolution& sol,
                                 const Eigen::VectorXd& multipliers) {
  const int ns = engine.num_states();
  const int ng = engine.num_vqe_parameters();
  PauliCoeffs out = PauliCoeffs::zero(engine.pairs());
  if (ng == 0) return out;
  // slot per (xi, g, sign); reduced sequentially for determinism
  std::vector<PauliCoeffs> slot(
      static_cast<std::size_t>(ns) * ng * 2,
      PauliCoeffs::zero(engine.pairs()));
  parallel_for(ns * ng * 2, [&](int task) {
    const int xi = task / (2 * ng);
    const int g = (task / 2) % ng;
    const double sign = (task % 2) ? -1.0 : 1.0;
    const int site = engine
                         .configured(sol.theta, engine.state_angles(xi))
                         .parameter_sites(engine.vqe_parameter_id(g))[0]
                         .site;
    const SiteShift shift{site, sign * kQuarterPi};
    slot[task] = engine.measure_densities(sol.theta, engine.state_angles(xi),
                                          {&shift, 1});
  });
  for (int xi = 0; xi < ns; ++xi)
    for (int g = 0; g < ng; ++g) {
      out.add_scaled(multipliers[g] / ns, slot[(xi * ng + g) * 2]);
      out.add_scaled(-multipliers[g] / ns, slot[(xi * ng + g) * 2 + 1]);
    }
  out.e = 0.0;  // identity density is insensitive to the angles
  return out;
}

Eigen::MatrixXd cp_cis_rhs(const McVqe& engine, const McVqeSolution& sol,
                           int state,
                           const Eigen::VectorXd* vqe_multipliers) {
  const int n = engine.num_monomers();
  const int ns = engine.num_states();
  const int ng = engine.num_vqe_parameters();
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n + 1, ns);

  // #1: dE/dtheta_M at the generating state, chained through the Jacobian.
  const Eigen::VectorXd gamma = sol.generating.col(state);
  const Circuit gamma_circuit =
      engine.configured(sol.theta, angles_from_coefficients(gamma));
  Eigen::VectorXd d(n);
  parallel_for(n, [&](int m) {
    d[m] = cis_angle_gradient(gamma_circuit, engine.observable(), m);
  });
  const Eigen::VectorXd chain = jacobian_contract(gamma, d);
  for (int xi = 0; xi < ns; ++xi)
    rhs.col(xi) += chain * sol.eigenvectors(xi, state);

  // #2: theta-tilde against the mixed entangler/CIS-angle Hessian of Ebar.
  if (vqe_multipliers != nullptr && ng > 0) {
    const Eigen::VectorXd& tilde = *vqe_multipliers;
    for (int xi = 0; xi < ns; ++xi) {
      const Eigen::VectorXd c_xi = engine.cis().c.col(xi);
      const Circuit circuit =
          engine.configured(sol.theta, angles_from_coefficients(c_xi));
      Eigen::MatrixXd mixed(n, ng);
      parallel_for(n * ng, [&](int task) {
        const int m = task / ng;
        const int g = task % ng;
        mixed(m, g) = shift_hessian(circuit, engine.observable(), m,
                                    engine.vqe_parameter_id(g));
      });
      rhs.col(xi) += jacobian_contract(c_xi, mixed * tilde) / ns;
    }
  }
  return rhs;
}

std::vector<Eigen::MatrixXd> cp_cis_lhs(const Eigen::MatrixXd& h_cis,
                                        const CisStates& cis, int num_states) {
  std::vector<Eigen::MatrixXd> blocks;
  blocks.reserve(num_states);
  const Eigen::MatrixXd identity =
      Eigen::MatrixXd::Identity(h_cis.rows(), h_cis.cols());
  for (int xi = 0; xi < num_states; ++xi) {
    const Eigen::VectorXd c = cis.c.col(xi);
    blocks.push_back(h_cis - cis.energies[xi] *
                                 (identity + 2.0 * c * c.transpose()));
  }
  return blocks;
}

Eigen::MatrixXd solve_cp_cis(const Eigen::MatrixXd& h_cis, const CisStates& cis,
                             int num_states, const Eigen::MatrixXd& rhs) {
  const int dim = static_cast<int>(h_cis.rows());
  // Block Xi is singular iff E_Xi meets another CIS eigenvalue (or zero, the
  // -2E_Xi eigendirection along C_Xi).
  for (int xi = 0; xi < num_states; ++xi) {
    for (int other = 0; other < dim; ++other) {
      if (other == xi) continue;
      if (std::abs(cis.energies[other] - cis.energies[xi]) < 1e-10)
        throw ConvergenceError(
            "CP-CIS block is singular: CIS states " + std::to_string(xi) +
            " and " + std::to_string(other) + " are degenerate (E = " +
            std::to_string(cis.energies[xi]) + ")");
    }
    if (std::abs(cis.energies[xi]) < 1e-12)
      throw ConvergenceError("CP-CIS block is singular: CIS state " +
                             std::to_string(xi) + " has zero energy");
  }
  const auto blocks = cp_cis_lhs(h_cis, cis, num_states);
  Eigen::MatrixXd out(dim, num_states);
  for (int xi = 0; xi < num_states; ++xi) {
    out.col(xi) = blocks[xi].ldlt().solve(-rhs.col(xi));
    const double resid = (blocks[xi] * out.col(xi) + rhs.col(xi)).norm();
    if (resid > 1e-9 * std::max(1.0, rhs.col(xi).norm()))
      throw ConvergenceError("CP-CIS solve residual " + std::to_string(resid) +
                             " in block " + std::to_string(xi));
  }
  return out;
}

PauliCoeffs crs_response_density(const Eigen::MatrixXd& multipliers,
                                 const CisStates& cis, int num_states,
                                 const PairList& pairs) {
  const int dim = static_cast<int>(cis.c.rows());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(dim, dim);
  for (int xi = 0; xi < num_states; ++xi) {
    const Eigen::VectorXd c = cis.c.col(xi);
    const Eigen::VectorXd t = multipliers.col(xi);
    d += t * c.transpose();
    d -= t.dot(c) * (c * c.transpose());
  }
  return cis_hamiltonian_adjoint(d, pairs);
}

PauliCoeffs assemble_relaxed(const PauliCoeffs& unrelaxed,
                             const PauliCoeffs& vqe_part,
                             const PauliCoeffs& crs_part,
                             const ResponseToggles& toggles) {
  PauliCoeffs out = unrelaxed;
  if (toggles.vqe) out += vqe_part;
  if (toggles.crs) out += crs_part;
  return out;
}

StateDensities relaxed_densities(const McVqe& engine, const McVqeSolution& sol,
                                 int state, const ResponseToggles& toggles) {
  StateDensities out;
  out.se_residual = se_response(sol, state);
  out.unrelaxed = unrelaxed_densities(engine, sol, state);
  out.vqe_response = PauliCoeffs::zero(engine.pairs());
  out.crs_response = PauliCoeffs::zero(engine.pairs());
  out.vqe_multipliers = Eigen::VectorXd::Zero(engine.num_vqe_parameters());

  const bool solve_vqe = toggles.vqe && engine.num_vqe_parameters() > 0;
  if (solve_vqe) {
    const Eigen::VectorXd g = cp_sa_vqe_rhs(engine, sol, state);
    const Eigen::MatrixXd h = cp_sa_vqe_lhs(engine, sol);
    out.vqe_multipliers = solve_cp_sa_vqe(
        h, g, engine.options().hessian_floor, &out.hessian_regularized);
    out.vqe_response = vqe_response_density(engine, sol, out.vqe_multipliers);
  }
  if (toggles.crs) {
    const Eigen::MatrixXd h_cis = build_cis(engine.hamiltonian(), engine.pairs());
    const Eigen::MatrixXd rhs = cp_cis_rhs(
        engine, sol, state, solve_vqe ? &out.vqe_multipliers : nullptr);
    out.crs_multipliers =
        solve_cp_cis(h_cis, engine.cis(), engine.num_states(), rhs);
    out.crs_response = crs_response_density(out.crs_multipliers, engine.cis(),
                                            engine.num_states(), engine.pairs());
  }
  out.relaxed =
      assemble_relaxed(out.unrelaxed, out.vqe_response, out.crs_response, toggles);
  return out;
}

MonomerDensities monomer_property_densities(const MonomerCoeffs& basis,
                                            const MonomerProperties& props,
                                            const PairList& pairs) {
  const int n = pairs.num_monomers();
  if (props.num_monomers() != n)
    throw ValidationError("monomer_property_densities: monomer count mismatch");
  MonomerDensities out;
  out.basis = basis;
  out.eta_h.assign(n, Eigen::Vector3d::Zero());
  out.eta_t.assign(n, Eigen::Vector3d::Zero());
  out.eta_p.assign(n, Eigen::Vector3d::Zero());
  out.xi.assign(n, Eigen::Vector3d::Zero());

  for (int k = 0; k < pairs.size(); ++k) {
    const auto [a, b] = pairs.pairs()[k];
    const Eigen::Vector3d* mu_a[3] = {&props.mu_h[a], &props.mu_t[a],
                                      &props.mu_p[a]};
    const Eigen::Vector3d* mu_b[3] = {&props.mu_h[b], &props.mu_t[b],
                                      &props.mu_p[b]};
    std::vector<Eigen::Vector3d>* eta[3] = {&out.eta_h, &out.eta_t, &out.eta_p};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double weight = 0.5 * basis.v[k](i, j);
        if (weight == 0.0) continue;
        const CouplingPartials parts =
            coupling_partials(*mu_a[i], *mu_b[j], props.r0[a], props.r0[b]);
        (*eta[i])[a] += weight * parts.mu_a;
        (*eta[j])[b] += weight * parts.mu_b;
        out.xi[a] += weight * parts.r0_a;
        out.xi[b] += weight * parts.r0_b;
      }
    }
  }
  return out;
}

std::vector<Eigen::Vector3d> nuclear_gradient(
    const MonomerDensities& densities, const MonomerPropertyGradients& grads,
    const Geometry& geometry) {
  const int n = geometry.num_monomers();
  if (static_cast<int>(grads.eps_h.size()) != n ||
      densities.basis.eps_h.size() != n)
    throw ValidationError("nuclear_gradient: inputs disagree on monomer count");
  std::vector<Eigen::Vector3d> grad;
  grad.reserve(geometry.num_atoms());
  for (int a = 0; a < n; ++a) {
    const int natom = static_cast<int>(geometry.monomers[a].atoms.size());
    if (static_cast<int>(grads.eps_h[a].size()) != natom)
      throw ValidationError("nuclear_gradient: gradient blocks do not match geometry");
    for (int z = 0; z < natom; ++z) {
      Eigen::Vector3d g = densities.basis.eps_h[a] * grads.eps_h[a][z] +
                          densities.basis.eps_p[a] * grads.eps_p[a][z];
      g += grads.mu_h[a][z].transpose() * densities.eta_h[a];
      g += grads.mu_t[a][z].transpose() * densities.eta_t[a];
      g += grads.mu_p[a][z].transpose() * densities.eta_p[a];
      g += grads.r0[a][z].transpose() * densities.xi[a];
      grad.push_back(g);
    }
  }
  return grad;
}

}  // namespace mcvqe
