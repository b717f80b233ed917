// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include <Eigen/Core>

#include "mcvqe/aiem.hpp"
#include "mcvqe/monomer_model.hpp"
#include "mcvqe/solver.hpp"

namespace mcvqe {

// Which wavefunction-response terms enter the relaxed densities. (vqe, crs)
// = (Y,Y)/(Y,N)/(N,Y)/(N,N); dropping a term drops its multipliers entirely,
// so e.g. (N,Y) solves CP-CIS with the Gamma-chain right-hand side only.
struct ResponseToggles {
  bool vqe = true;
  bool crs = true;
};

// Per-state density bundle. relaxed = unrelaxed + vqe_response +
// crs_response componentwise (disabled parts are zero).
struct StateDensities {
  PauliCoeffs unrelaxed, vqe_response, crs_response, relaxed;
  Eigen::VectorXd vqe_multipliers;   // theta-tilde
  Eigen::MatrixXd crs_multipliers;   // Xi-tilde, (N+1) x N_Theta
  double se_residual = 0.0;
  bool hessian_regularized = false;
};

// --- individual response-stage operations ---

// <Psi_Theta|P|Psi_Theta> for every Pauli slot (identity slot = 1).
PauliCoeffs unrelaxed_densities(const McVqe& engine, const McVqeSolution& sol,
                                int state);

// Subspace-eigenstate response: the multipliers are analytically V, and the
// Lagrangian term is identically zero. Returns |sum_Xi V (HV - VE)| for the
// state and throws ConsistencyError above 1e-10 (an upstream eigen-solve
// inconsistency).
double se_response(const McVqeSolution& sol, int state);

// G_g = d E_Theta / d theta_g at the generating-state angles.
Eigen::VectorXd cp_sa_vqe_rhs(const McVqe& engine, const McVqeSolution& sol,
                              int state);

// The SA-VQE Hessian at theta*.
Eigen::MatrixXd cp_sa_vqe_lhs(const McVqe& engine, const McVqeSolution& sol);

// Solves H theta-tilde = -G with a 1e-8 Tikhonov floor when the spectrum
// dips below it; verifies the residual.
Eigen::VectorXd solve_cp_sa_vqe(const Eigen::MatrixXd& hessian,
                                const Eigen::VectorXd& rhs, double floor,
                                bool* regularized = nullptr);

// gamma^VQE: multiplier-weighted +-pi/4 difference of the Pauli densities,
// averaged over the SA ensemble.
PauliCoeffs vqe_response_density(const McVqe& engine, const McVqeSolution& sol,
                                 const Eigen::VectorXd& multipliers);

// CP-CIS right-hand side G_{I Xi}. Contribution #1 chains the state-energy
// CIS-angle gradient through the angle Jacobian at Gamma_Theta and scales by
// V; #2 (present when vqe_multipliers != nullptr) contracts theta-tilde with
// the mixed entangler/CIS-angle Hessian at each ensemble state's own angles.
Eigen::MatrixXd cp_cis_rhs(const McVqe& engine, const McVqeSolution& sol,
                           int state,
                           const Eigen::VectorXd* vqe_multipliers);

// Per-Xi CP-CIS block H_cis - E_Xi (I + 2 C_Xi C_Xi^T).
std::vector<Eigen::MatrixXd> cp_cis_lhs(const Eigen::MatrixXd& h_cis,
                                        const CisStates& cis, int num_states);

// Solves the blocks; rejects CIS degeneracies (or an exactly-zero E_Xi)
// naming the offending pair rather than pseudo-inverting through them.
Eigen::MatrixXd solve_cp_cis(const Eigen::MatrixXd& h_cis, const CisStates& cis,
                             int num_states, const Eigen::MatrixXd& rhs);

// gamma^CRS: classical contraction of D[multipliers] against dH_CIS/d(slot).
PauliCoeffs crs_response_density(const Eigen::MatrixXd& multipliers,
                                 const CisStates& cis, int num_states,
                                 const PairList& pairs);

PauliCoeffs assemble_relaxed(const PauliCoeffs& unrelaxed,
                             const PauliCoeffs& vqe_part,
                             const PauliCoeffs& crs_part,
                             const ResponseToggles& toggles);

// The full response stage for one state.
StateDensities relaxed_densities(const McVqe& engine, const McVqeSolution& sol,
                                 int state, const ResponseToggles& toggles);

// --- classical contraction chain ---

// Monomer-basis one-body densities plus dipole (eta) and centroid (xi)
// densities assembled from the pair densities through the coupling partials.
struct MonomerDensities {
  MonomerCoeffs basis;
  std::vector<Eigen::Vector3d> eta_h, eta_t, eta_p, xi;
};

MonomerDensities monomer_property_densities(const MonomerCoeffs& basis,
                                            const MonomerProperties& props,
                                            const PairList& pairs);

// dE/dr per atom (flattened [monomer][atom] order): energy densities against
// the eps gradients, eta against the dipole Jacobians, xi against the
// centroid rows. The eps_t term carries a zero coefficient and is dropped.
std::vector<Eigen::Vector3d> nuclear_gradient(
    const MonomerDensities& densities, const MonomerPropertyGradients& grads,
    const Geometry& geometry);

}  // namespace mcvqe
