// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#include "mcvqe/circuit.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mcvqe/errors.hpp"

namespace mcvqe {

namespace {
constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kHalfPi = std::numbers::pi / 2.0;

// Appends `extra` to `base`, merging deltas that land on the same site.
std::vector<SiteShift> merge_shifts(std::span<const SiteShift> base,
                                    std::initializer_list<SiteShift> extra) {
  std::vector<SiteShift> out(base.begin(), base.end());
  for (const SiteShift& e : extra) {
    bool merged = false;
    for (SiteShift& b : out) {
      if (b.site == e.site) {
        b.delta += e.delta;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(e);
  }
  return out;
}
}  // namespace

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1) throw ValidationError("Circuit: need at least one qubit");
}

void Circuit::check_qubit(int q) const {
  if (q < 0 || q >= num_qubits_)
    throw ValidationError("Circuit: qubit index " + std::to_string(q) +
                          " out of range");
}

void Circuit::check_parameter(int id) const {
  if (id < 0 || id >= num_parameters())
    throw ValidationError("Circuit: unknown parameter id " +
                          std::to_string(id));
}

int Circuit::add_ry(int qubit, double theta) {
  check_qubit(qubit);
  const int site = num_sites();
  site_angles_.push_back(theta);
  Param p{theta, 1, {{site, 1.0}, {}}};
  params_.push_back(p);
  gates_.push_back({GateKind::Ry, qubit, -1, site, -1});
  return num_parameters() - 1;
}

int Circuit::add_fy(int qubit_a, int qubit_b, double theta) {
  check_qubit(qubit_a);
  check_qubit(qubit_b);
  if (qubit_a == qubit_b) throw ValidationError("Fy: repeated qubit");
  const int left = num_sites();
  site_angles_.push_back(-theta / 2.0);
  site_angles_.push_back(+theta / 2.0);
  Param p{theta, 2, {{left, -0.5}, {left + 1, +0.5}}};
  params_.push_back(p);
  gates_.push_back({GateKind::Fy, qubit_a, qubit_b, left, left + 1});
  return num_parameters() - 1;
}

void Circuit::add_cnot(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw ValidationError("CNOT: control equals target");
  gates_.push_back({GateKind::Cnot, control, target, -1, -1});
}

void Circuit::add_cz(int qubit_a, int qubit_b) {
  check_qubit(qubit_a);
  check_qubit(qubit_b);
  if (qubit_a == qubit_b) throw ValidationError("CZ: repeated qubit");
  gates_.push_back({GateKind::Cz, qubit_a, qubit_b, -1, -1});
}

void Circuit::add_h(int qubit) {
  check_qubit(qubit);
  gates_.push_back({GateKind::H, qubit, -1, -1, -1});
}

void Circuit::set_parameter(int id, double theta) {
  check_parameter(id);
  Param& p = params_[id];
  p.value = theta;
  for (int k = 0; k < p.num_sites; ++k)
    site_angles_[p.sites[k].site] = p.sites[k].weight * theta;
}

double Circuit::parameter(int id) const {
  check_parameter(id);
  return params_[id].value;
}

std::span<const ParameterSite> Circuit::parameter_sites(int id) const {
  check_parameter(id);
  return {params_[id].sites,
          static_cast<std::size_t>(params_[id].num_sites)};
}

double Circuit::site_angle(int site, std::span<const SiteShift> shifts) const {
  double angle = site_angles_[site];
  for (const SiteShift& s : shifts)
    if (s.site == site) angle += s.delta;
  return angle;
}

Statevector Circuit::apply(const Statevector& start,
                           std::span<const SiteShift> shifts) const {
  if (start.num_qubits() != num_qubits_)
    throw ValidationError("Circuit: statevector qubit count mismatch");
  Statevector sv = start;
  for (const Gate& g : gates_) {
    switch (g.kind) {
      case GateKind::Ry:
        sv.apply_ry(g.q0, site_angle(g.s0, shifts));
        break;
      case GateKind::Cnot:
        sv.apply_cnot(g.q0, g.q1);
        break;
      case GateKind::Cz:
        sv.apply_cz(g.q0, g.q1);
        break;
      case GateKind::H:
        sv.apply_h(g.q0);
        break;
      case GateKind::Fy:
        sv.apply_fy(g.q0, g.q1, site_angle(g.s0, shifts),
                    site_angle(g.s1, shifts));
        break;
    }
  }
  return sv;
}

Statevector Circuit::run(std::span<const SiteShift> shifts) const {
  return apply(Statevector(num_qubits_), shifts);
}

double observe(const Circuit& circuit, const Observable& obs,
               std::span<const SiteShift> shifts) {
  const Statevector sv = circuit.run(shifts);
  double acc = obs.constant;
  for (const auto& [op, weight] : obs.terms) acc += weight * expectation(sv, op);
  return acc;
}

std::vector<double> measure(const Circuit& circuit,
                            std::span<const PauliString> ops,
                            std::span<const SiteShift> shifts) {
  const Statevector sv = circuit.run(shifts);
  std::vector<double> out(ops.size());
  expectations(sv, ops, out);
  return out;
}

double shift_gradient(const Circuit& circuit, const Observable& obs, int param,
                      std::span<const SiteShift> base) {
  double grad = 0.0;
  for (const ParameterSite& s : circuit.parameter_sites(param)) {
    const auto plus = merge_shifts(base, {{s.site, +kQuarterPi}});
    const auto minus = merge_shifts(base, {{s.site, -kQuarterPi}});
    grad += s.weight * (observe(circuit, obs, plus) - observe(circuit, obs, minus));
  }
  return grad;
}

double shift_hessian(const Circuit& circuit, const Observable& obs,
                     int param_i, int param_j) {
  double hess = 0.0;
  for (const ParameterSite& a : circuit.parameter_sites(param_i)) {
    for (const ParameterSite& b : circuit.parameter_sites(param_j)) {
      double stencil;
      if (a.site == b.site) {
        stencil = observe(circuit, obs, merge_shifts({}, {{a.site, +kHalfPi}})) -
                  2.0 * observe(circuit, obs) +
                  observe(circuit, obs, merge_shifts({}, {{a.site, -kHalfPi}}));
      } else {
        stencil =
            observe(circuit, obs,
                    merge_shifts({}, {{a.site, +kQuarterPi}, {b.site, +kQuarterPi}})) -
            observe(circuit, obs,
                    merge_shifts({}, {{a.site, +kQuarterPi}, {b.site, -kQuarterPi}})) -
            observe(circuit, obs,
                    merge_shifts({}, {{a.site, -kQuarterPi}, {b.site, +kQuarterPi}})) +
            observe(circuit, obs,
                    merge_shifts({}, {{a.site, -kQuarterPi}, {b.site, -kQuarterPi}}));
      }
      hess += a.weight * b.weight * stencil;
    }
  }
  return hess;
}

}  // namespace mcvqe
