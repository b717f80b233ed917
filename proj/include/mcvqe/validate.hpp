// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "mcvqe/system.hpp"

namespace mcvqe {

// The four layers of the analytic-vs-finite-difference comparison: relaxed
// Pauli densities, monomer-basis densities, monomer-property (dipole and
// centroid) densities, and the assembled nuclear gradient. Each layer
// perturbs its own inputs and re-runs everything downstream.
enum class ValidationLayer { Pauli, Monomer, Property, Nuclear };

// Default symmetric-difference steps: 1e-7 (pauli), 1e-7 (monomer),
// 1e-6 (property), 0.002 angstrom (nuclear).
double default_step(ValidationLayer layer);

std::string layer_name(ValidationLayer layer);
ValidationLayer layer_from_name(const std::string& name);

// Max-abs deviation per density class for one method.
struct DeviationRow {
  std::string method;
  std::vector<std::pair<std::string, double>> classes;
  double worst = 0.0;
};

// Runs the layer comparison for every method over the first
// spec.options.num_states states. step = 0 selects the layer default.
// MC-VQE re-solves warm-start from the unperturbed angles so the finite
// difference follows the same solution branch.
std::vector<DeviationRow> validate_layer(const System& system,
                                         ValidationLayer layer,
                                         const std::vector<MethodSpec>& methods,
                                         double step = 0.0);

}  // namespace mcvqe
