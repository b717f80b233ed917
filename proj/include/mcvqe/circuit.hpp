// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mcvqe/statevector.hpp"

namespace mcvqe {

enum class GateKind { Ry, Cnot, Cz, H, Fy };

// One gate in program order. Ry/H use q0; Cnot is q0=control, q1=target;
// Fy acts on the (q0, q1) wire pair with q0 the carrier. s0/s1 index the
// circuit's angle-site table (Fy owns the left/right half-angle sites).
struct Gate {
  GateKind kind;
  int q0 = -1;
  int q1 = -1;
  int s0 = -1;
  int s1 = -1;
};

// Shift applied to a raw angle site on top of the stored value. Shift lists
// are how the tomography stencils evaluate displaced circuits without
// mutating shared state.
struct SiteShift {
  int site;
  double delta;
};

// A logical circuit parameter drives one angle site (plain Ry, weight 1) or
// the two half-angle sites of an Fy gate (weights -1/2, +1/2). Site angle =
// weight * parameter value, and the same weights chain through the shift
// rules.
struct ParameterSite {
  int site;
  double weight;
};

class Circuit {
public:
  explicit Circuit(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  int num_parameters() const { return static_cast<int>(params_.size()); }
  int num_sites() const { return static_cast<int>(site_angles_.size()); }
  const std::vector<Gate>& gates() const { return gates_; }

  // Builders; parametrized gates return the new parameter id.
  int add_ry(int qubit, double theta);
  int add_fy(int qubit_a, int qubit_b, double theta);
  void add_cnot(int control, int target);
  void add_cz(int qubit_a, int qubit_b);
  void add_h(int qubit);

  void set_parameter(int id, double theta);
  double parameter(int id) const;
  std::span<const ParameterSite> parameter_sites(int id) const;

  Statevector apply(const Statevector& start,
                    std::span<const SiteShift> shifts = {}) const;
  Statevector run(std::span<const SiteShift> shifts = {}) const;

private:
  void check_qubit(int q) const;
  void check_parameter(int id) const;
  double site_angle(int site, std::span<const SiteShift> shifts) const;

  int num_qubits_;
  std::vector<Gate> gates_;
  std::vector<double> site_angles_;
  struct Param {
    double value;
    int num_sites;
    ParameterSite sites[2];
  };
  std::vector<Param> params_;
};

// Weighted Pauli-string observable. The constant carries identity terms so
// energies evaluate in the same pass as the strings.
struct Observable {
  double constant = 0.0;
  std::vector<std::pair<PauliString, double>> terms;
};

// One state preparation, all Pauli terms contracted in a single pass.
double observe(const Circuit& circuit, const Observable& obs,
               std::span<const SiteShift> shifts = {});

std::vector<double> measure(const Circuit& circuit,
                            std::span<const PauliString> ops,
                            std::span<const SiteShift> shifts = {});

// Exact dO/d(theta_param) via the +-pi/4 tomography rule, applied per angle
// site with the parameter's chain weights. `base` holds outer shifts already
// in effect (used when nesting rules for mixed second derivatives).
double shift_gradient(const Circuit& circuit, const Observable& obs,
                      int param, std::span<const SiteShift> base = {});

// Exact d2O/(d theta_i d theta_j): +-pi/2 three-point stencil on a site
// paired with itself, four-point +-pi/4 stencil across distinct sites.
double shift_hessian(const Circuit& circuit, const Observable& obs,
                     int param_i, int param_j);

}  // namespace mcvqe
