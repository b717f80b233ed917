// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "mcvqe/aiem.hpp"
#include "mcvqe/cis.hpp"

namespace mcvqe {

// Dense eigenpairs, ascending, columns sign-fixed.
struct DenseSpectrum {
  Eigen::VectorXd energies;
  Eigen::MatrixXd states;
};

// 2^N x 2^N matrix of the Pauli Hamiltonian.
Eigen::MatrixXd dense_hamiltonian(const PauliCoeffs& h, const PairList& pairs);

// Dense diagonalization (guarded to N <= 14).
DenseSpectrum fci_solve(const PauliCoeffs& h, const PairList& pairs);

// <Theta|P|Theta> per Pauli slot; for a variational eigenstate these are the
// exact dE/d(coefficient), so relaxed and unrelaxed coincide. Rejects
// near-degenerate target states.
PauliCoeffs fci_densities(const DenseSpectrum& spectrum, const PairList& pairs,
                          int state);

// CIS analytical densities via the same dH_CIS/d(slot) tables the CRS
// response uses, with D = C_Theta C_Theta^T.
PauliCoeffs cis_densities(const CisStates& cis, int state, const PairList& pairs);

// Second-order symmetric finite difference along `direction`.
template <typename F>
double central_fd(F&& f, const Eigen::VectorXd& point,
                  const Eigen::VectorXd& direction, double step) {
  return (f(point + step * direction) - f(point - step * direction)) /
         (2.0 * step);
}

}  // namespace mcvqe
