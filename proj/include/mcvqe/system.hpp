// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mcvqe/aiem.hpp"
#include "mcvqe/monomer_model.hpp"
#include "mcvqe/response.hpp"
#include "mcvqe/solver.hpp"

namespace mcvqe {

// A concrete exciton system: geometry, monomer data and the pair list.
// Synthetic systems re-derive properties from geometry on demand (needed for
// nuclear finite differences and dynamics); tabulated systems are frozen at
// their loaded geometry.
struct System {
  Geometry geometry;
  std::vector<SyntheticMonomerParams> synthetic_params;
  MonomerProperties props;
  MonomerPropertyGradients grads;
  PairList pairs;
  bool synthetic = true;
};

System make_synthetic_system(Geometry geometry,
                             std::vector<SyntheticMonomerParams> params,
                             std::optional<PairList> pairs = std::nullopt);
System system_from_tabulated(const TabulatedSystem& tab);

// Synthetic-system JSON: {"monomers": [{"atoms": [{"xyz": [..], "mass": ..}],
// "k_h":.., "k_p":.., "d_h":.., "d_p":.., "delta_e":.., "m_h":.., "m_p":..,
// "m_t":..}, ...], "pairs": [[0,1],...]}  (pairs optional; defaults to the
// nearest-neighbor chain, both orderings implied).
System load_synthetic_file(const std::string& path);

// Recomputes properties and their gradients at the current geometry.
void refresh_properties(System& system);

enum class Method { Fci, Cis, McVqe };

struct MethodSpec {
  Method method = Method::McVqe;
  ResponseToggles toggles;
  EntanglerLayout layout;
  McVqeOptions options;
};

// "FCI", "CIS", "VQE(Y,N)", ... as used in reports and validation tables.
std::string method_label(const MethodSpec& spec);

struct SolveInfo {
  int vqe_iterations = 0;
  double vqe_grad_norm = 0.0;
  bool hessian_regularized = false;
  double se_residual = 0.0;
};

// State energies (lowest num_states) for the method at the given Pauli
// coefficients; re-runs the full method pipeline, so it is the energy
// functional every finite-difference layer probes. MC-VQE warm-starts from
// *warm_theta when given and reports theta* through theta_out.
Eigen::VectorXd state_energies(const PauliCoeffs& h, const PairList& pairs,
                               const MethodSpec& spec,
                               const Eigen::VectorXd* warm_theta = nullptr,
                               Eigen::VectorXd* theta_out = nullptr,
                               SolveInfo* info = nullptr);

// The full gradient pipeline for one state: relaxed Pauli densities by the
// chosen method, the monomer-basis transform, property densities, and the
// nuclear gradient. FCI and CIS share the identical classical chain.
struct GradientResult {
  Eigen::VectorXd energies;
  StateDensities densities;
  MonomerDensities monomer;
  std::vector<Eigen::Vector3d> gradient;
  Eigen::VectorXd theta;  // converged entangler angles (MC-VQE only)
  SolveInfo info;
};

GradientResult compute_gradient(const System& system, const MethodSpec& spec,
                                int state,
                                const Eigen::VectorXd* warm_theta = nullptr);

// Energies only (used by reports and the dynamics bookkeeping).
Eigen::VectorXd compute_energies(const System& system, const MethodSpec& spec,
                                 const Eigen::VectorXd* warm_theta = nullptr,
                                 Eigen::VectorXd* theta_out = nullptr,
                                 SolveInfo* info = nullptr);

}  // namespace mcvqe
