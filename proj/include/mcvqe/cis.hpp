// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "mcvqe/circuit.hpp"

namespace mcvqe {

// CIS circuit angles for an (N+1)-coefficient state; theta[0] drives the
// reference amplitude, theta[M>0] the Fy excitation-transfer chain.
struct CisAngles {
  Eigen::VectorXd theta;
};

// theta_M = P_M acos(C_M / sqrt(sum_{L>=M} C_L^2)) with P_M = sign(C_N) on
// the last angle. Degenerate tails (norm < 1e-12) pin theta_M to 0: the
// state has no amplitude there, so any angle works and zero is reproducible.
// sign(0) counts as +1.
CisAngles angles_from_coefficients(const Eigen::VectorXd& c);

// Contraction sum_M d_M dtheta_M/dC_I of an N-vector d against the angle
// Jacobian; rows with degenerate tails contribute zero, matching the
// theta_M := 0 convention.
Eigen::VectorXd jacobian_contract(const Eigen::VectorXd& c,
                                  const Eigen::VectorXd& d);

// Ry(theta_0) on qubit 0 followed by the Fy chain on adjacent wire pairs.
// Acting on |0...0> this places c[0] on the reference ket and c[A+1] on the
// single-excitation ket of qubit A, with nothing outside that span.
Circuit build_cis_circuit(const CisAngles& angles);

// Rewrites the CIS parameter block (ids [0, N)) of a circuit built by
// build_cis_circuit, leaving any appended entangler parameters alone.
void set_cis_angles(Circuit& circuit, const CisAngles& angles);

// d eps / d theta_M. theta_0 uses the plain +-pi/4 rule; the Fy angles chain
// through both half-angle Ry sites with -1/2 and +1/2 weights. Delegates to
// the parameter-site shift machinery, which encodes exactly those weights.
double cis_angle_gradient(const Circuit& circuit, const Observable& obs, int m,
                          std::span<const SiteShift> base = {});

// CIS eigenpairs: full (N+1)-column solution, ascending energies, columns
// sign-fixed (largest-magnitude component positive).
struct CisStates {
  Eigen::MatrixXd c;
  Eigen::VectorXd energies;
};
CisStates solve_cis(const Eigen::MatrixXd& h_cis);

// Shared deterministic eigenvector sign convention.
void fix_eigenvector_signs(Eigen::MatrixXd& vectors);

}  // namespace mcvqe
