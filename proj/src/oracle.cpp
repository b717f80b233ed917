// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#include "mcvqe/oracle.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "mcvqe/errors.hpp"
#include "mcvqe/statevector.hpp"

namespace mcvqe {

Eigen::MatrixXd dense_hamiltonian(const PauliCoeffs& h, const PairList& pairs) {
  const int n = pairs.num_monomers();
  if (n > 14) throw ValidationError("dense_hamiltonian: N > 14 is not dense-feasible");
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);

  // term: coefficient * (flip by X mask, sign by Z-mask parity)
  auto add_term = [&](double coeff, std::size_t flip, std::size_t sign) {
    if (coeff == 0.0) return;
    for (std::size_t col = 0; col < dim; ++col) {
      const double s = __builtin_parityll(col & sign) ? -1.0 : 1.0;
      out(col ^ flip, col) += coeff * s;
    }
  };

  add_term(h.e, 0, 0);
  for (int a = 0; a < n; ++a) {
    add_term(h.x[a], std::size_t{1} << a, 0);
    add_term(h.z[a], 0, std::size_t{1} << a);
  }
  for (int k = 0; k < pairs.size(); ++k) {
    const auto [a, b] = pairs.pairs()[k];
    const std::size_t abit = std::size_t{1} << a, bbit = std::size_t{1} << b;
    add_term(0.5 * h.xx[k], abit | bbit, 0);
    add_term(0.5 * h.xz[k], abit, bbit);
    add_term(0.5 * h.zx[k], bbit, abit);
    add_term(0.5 * h.zz[k], 0, abit | bbit);
  }
  return out;
}

DenseSpectrum fci_solve(const PauliCoeffs& h, const PairList& pairs) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      dense_hamiltonian(h, pairs));
  if (es.info() != Eigen::Success)
    throw ConvergenceError("fci_solve: eigensolver failed");
  DenseSpectrum out;
  out.energies = es.eigenvalues();
  out.states = es.eigenvectors();
  fix_eigenvector_signs(out.states);
  return out;
}

PauliCoeffs fci_densities(const DenseSpectrum& spectrum, const PairList& pairs,
                          int state) {
  const int dim = static_cast<int>(spectrum.energies.size());
  if (state < 0 || state >= dim)
    throw ValidationError("fci_densities: state index out of range");
  for (int other = 0; other < dim; ++other) {
    if (other == state) continue;
    if (std::abs(spectrum.energies[other] - spectrum.energies[state]) < 1e-10)
      throw ConvergenceError(
          "fci_densities: states " + std::to_string(state) + " and " +
          std::to_string(other) + " are degenerate; densities are undefined");
  }
  const int n = pairs.num_monomers();
  std::vector<double> amp(spectrum.states.col(state).data(),
                          spectrum.states.col(state).data() + dim);
  const Statevector psi = Statevector::from_amplitudes(n, std::move(amp));
  const auto basis = pauli_basis(pairs);
  std::vector<double> values(basis.size());
  expectations(psi, basis, values);
  return coeffs_from_measurements(values, pairs);
}

PauliCoeffs cis_densities(const CisStates& cis, int state,
                          const PairList& pairs) {
  if (state < 0 || state >= cis.energies.size())
    throw ValidationError("cis_densities: state index out of range");
  for (Eigen::Index other = 0; other < cis.energies.size(); ++other) {
    if (other == state) continue;
    if (std::abs(cis.energies[other] - cis.energies[state]) < 1e-10)
      throw ConvergenceError("cis_densities: degenerate CIS states " +
                             std::to_string(state) + " and " +
                             std::to_string(other));
  }
  const Eigen::VectorXd c = cis.c.col(state);
  return cis_hamiltonian_adjoint(c * c.transpose(), pairs);
}

}  // namespace mcvqe
