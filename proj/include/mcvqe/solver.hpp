// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "mcvqe/aiem.hpp"
#include "mcvqe/cis.hpp"
#include "mcvqe/circuit.hpp"

namespace mcvqe {

// VQE entangler layouts. Identity appends nothing (zero parameters);
// Truncated is a single Ry at the end of each wire; So4Chain stacks SO(4)
// two-body blocks over nearest-neighbor wire pairs in a brick pattern, with
// adjacent Ry gates merged away (one leading Ry per wire, then per block
// CNOT-Ry2-CNOT-Ry2), so the parameter Hessian keeps no redundant zero modes.
struct EntanglerLayout {
  enum class Kind { Identity, Truncated, So4Chain } kind = Kind::Truncated;
  int layers = 1;  // brick super-layers for So4Chain
};

// Appends the entangler to a CIS circuit; returns the new parameter count.
int append_entangler(Circuit& circuit, const EntanglerLayout& layout);

struct McVqeOptions {
  int num_states = 2;
  double gtol = 1e-10;  // infinity norm of the SA gradient at theta*
  int max_iter = 2000;
  double hessian_floor = 1e-8;  // Tikhonov guard for the CP-SA-VQE solve
};

struct McVqeSolution {
  Eigen::VectorXd theta;          // optimized entangler angles
  Eigen::MatrixXd subspace_h;     // H_{XiXi'}
  Eigen::MatrixXd eigenvectors;   // V_{XiTheta}, sign-fixed
  Eigen::VectorXd energies;       // E_Theta ascending
  Eigen::MatrixXd generating;     // Gamma_{ITheta} = C V
  int iterations = 0;
  double grad_norm = 0.0;
};

// One MC-VQE problem instance: a Pauli Hamiltonian, its CIS contracted
// reference states, and an entangler ansatz. Circuit parameter ids [0, N)
// are the CIS angles, [N, N+Ng) the entangler angles. All evaluation methods
// are const and build on shift lists or local circuit copies, so batches over
// states and stencil points can run in parallel.
class McVqe {
public:
  McVqe(PauliCoeffs hamiltonian, PairList pairs, CisStates cis,
        EntanglerLayout layout, McVqeOptions options = {});

  int num_monomers() const { return pairs_.num_monomers(); }
  int num_states() const { return options_.num_states; }
  int num_vqe_parameters() const { return num_vqe_params_; }
  int num_cis_parameters() const { return num_cis_params_; }
  int vqe_parameter_id(int g) const { return num_cis_params_ + g; }
  const PauliCoeffs& hamiltonian() const { return hamiltonian_; }
  const PairList& pairs() const { return pairs_; }
  const CisStates& cis() const { return cis_; }
  const Observable& observable() const { return observable_; }
  const McVqeOptions& options() const { return options_; }

  // Circuit configured at (theta_g, theta_M); the workhorse for every
  // tomography batch.
  Circuit configured(const Eigen::VectorXd& theta_g,
                     const CisAngles& angles) const;
  CisAngles state_angles(int xi) const;  // theta_M[C_Xi]

  // eps[theta_g, theta_M]: one state preparation, all Pauli terms in a pass.
  double energy_epsilon(const Eigen::VectorXd& theta_g,
                        const CisAngles& angles) const;

  // Ebar and its exact shift-rule gradient over the entangler angles.
  std::pair<double, Eigen::VectorXd> sa_energy_and_gradient(
      const Eigen::VectorXd& theta_g) const;

  // SA-VQE Hessian d2 Ebar / d theta_g d theta_g' (pi/2 diagonal stencil,
  // four-point off-diagonal), symmetrized.
  Eigen::MatrixXd sa_hessian(const Eigen::VectorXd& theta_g) const;

  // Minimizes Ebar from `warm` (zeros = identity entangler when absent).
  // Throws ConvergenceError with the best point on failure.
  Eigen::VectorXd optimize_sa_vqe(const Eigen::VectorXd* warm = nullptr,
                                  int* iterations = nullptr,
                                  double* grad_norm = nullptr) const;

  // Subspace Hamiltonian at converged angles: diagonal from eps per state,
  // off-diagonal from the +-interference-state energy difference.
  Eigen::MatrixXd subspace_hamiltonian(const Eigen::VectorXd& theta_g) const;

  static std::pair<Eigen::MatrixXd, Eigen::VectorXd> diagonalize_subspace(
      const Eigen::MatrixXd& h_sub);

  static Eigen::MatrixXd generating_states(const CisStates& cis,
                                           const Eigen::MatrixXd& v);

  // Full pipeline: optimize, assemble + diagonalize the subspace, form the
  // generating states, and verify eps[theta*, theta_M[Gamma]] = E_Theta.
  McVqeSolution solve(const Eigen::VectorXd* warm = nullptr) const;

  // Pauli expectation values of the configured (optionally shifted) circuit,
  // one entry per Hamiltonian slot, with the identity density pinned to 1.
  PauliCoeffs measure_densities(const Eigen::VectorXd& theta_g,
                                const CisAngles& angles,
                                std::span<const SiteShift> shifts = {}) const;

private:
  PauliCoeffs hamiltonian_;
  PairList pairs_;
  CisStates cis_;
  EntanglerLayout layout_;
  McVqeOptions options_;
  Observable observable_;
  std::vector<PauliString> basis_;
  Circuit prototype_;
  int num_cis_params_ = 0;
  int num_vqe_params_ = 0;
};

}  // namespace mcvqe
