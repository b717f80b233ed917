// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#include "mcvqe/statevector.hpp"

#include <cmath>
#include <string>

#include "mcvqe/errors.hpp"

namespace mcvqe {

PauliString::PauliString(int qubit, PauliAxis axis) : size_(1) {
  if (qubit < 0) throw ValidationError("PauliString: negative qubit index");
  terms_[0] = {qubit, axis};
}

PauliString::PauliString(int qubit_a, PauliAxis axis_a, int qubit_b,
                         PauliAxis axis_b)
    : size_(2) {
  if (qubit_a < 0 || qubit_b < 0)
    throw ValidationError("PauliString: negative qubit index");
  if (qubit_a == qubit_b)
    throw ValidationError("PauliString: repeated qubit index " +
                          std::to_string(qubit_a));
  terms_[0] = {qubit_a, axis_a};
  terms_[1] = {qubit_b, axis_b};
}

Statevector::Statevector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1)
    throw ValidationError("Statevector: need at least one qubit");
  if (num_qubits > 30) throw ValidationError("Statevector: too many qubits");
  amp_.assign(std::size_t{1} << num_qubits, 0.0);
  amp_[0] = 1.0;
}

Statevector Statevector::from_amplitudes(int num_qubits,
                                         std::vector<double> amp) {
  Statevector sv(num_qubits);
  if (amp.size() != sv.amp_.size())
    throw ValidationError("Statevector: amplitude count is not 2^N");
  sv.amp_ = std::move(amp);
  if (std::abs(sv.norm() - 1.0) > 1e-12)
    throw ValidationError("Statevector: amplitudes are not normalized");
  return sv;
}

double Statevector::norm() const {
  double s = 0.0;
  for (double a : amp_) s += a * a;
  return std::sqrt(s);
}

void Statevector::check_qubit(int q) const {
  if (q < 0 || q >= num_qubits_)
    throw ValidationError("qubit index " + std::to_string(q) +
                          " out of range for " + std::to_string(num_qubits_) +
                          " qubits");
}

void Statevector::apply_ry(int qubit, double theta) {
  check_qubit(qubit);
  const std::size_t bit = std::size_t{1} << qubit;
  const double c = std::cos(theta), s = std::sin(theta);
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    if (i & bit) continue;
    const double a0 = amp_[i], a1 = amp_[i | bit];
    amp_[i] = c * a0 - s * a1;
    amp_[i | bit] = s * a0 + c * a1;
  }
}

void Statevector::apply_h(int qubit) {
  check_qubit(qubit);
  const std::size_t bit = std::size_t{1} << qubit;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    if (i & bit) continue;
    const double a0 = amp_[i], a1 = amp_[i | bit];
    amp_[i] = (a0 + a1) * inv_sqrt2;
    amp_[i | bit] = (a0 - a1) * inv_sqrt2;
  }
}

void Statevector::apply_cnot(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target)
    throw ValidationError("CNOT: control equals target");
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  for (std::size_t i = 0; i < amp_.size(); ++i)
    if ((i & cbit) && !(i & tbit)) std::swap(amp_[i], amp_[i | tbit]);
}

void Statevector::apply_cz(int qubit_a, int qubit_b) {
  check_qubit(qubit_a);
  check_qubit(qubit_b);
  if (qubit_a == qubit_b) throw ValidationError("CZ: repeated qubit");
  const std::size_t mask =
      (std::size_t{1} << qubit_a) | (std::size_t{1} << qubit_b);
  for (std::size_t i = 0; i < amp_.size(); ++i)
    if ((i & mask) == mask) amp_[i] = -amp_[i];
}

void Statevector::apply_fy(int qubit_a, int qubit_b, double theta_left,
                           double theta_right) {
  apply_ry(qubit_b, theta_left);
  apply_cz(qubit_a, qubit_b);
  apply_ry(qubit_b, theta_right);
  apply_cnot(qubit_b, qubit_a);
}

double expectation(const Statevector& state, const PauliString& op) {
  std::size_t flip = 0, sign = 0;
  for (const PauliTerm& t : op.terms()) {
    if (t.qubit >= state.num_qubits())
      throw ValidationError("PauliString qubit out of range");
    if (t.axis == PauliAxis::X)
      flip |= std::size_t{1} << t.qubit;
    else
      sign |= std::size_t{1} << t.qubit;
  }
  const auto& amp = state.amplitudes();
  double acc = 0.0;
  for (std::size_t i = 0; i < amp.size(); ++i) {
    const double term = amp[i] * amp[i ^ flip];
    acc += __builtin_parityll(i & sign) ? -term : term;
  }
  return acc;
}

void expectations(const Statevector& state, std::span<const PauliString> ops,
                  std::span<double> out) {
  for (std::size_t k = 0; k < ops.size(); ++k)
    out[k] = expectation(state, ops[k]);
}

std::array<std::array<double, 4>, 4> fy_matrix(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  // rows/cols ordered |00>,|01>,|10>,|11> with qubit_a as the high bit
  return {{{1, 0, 0, 0},  //
           {0, 0, s, -c},
           {0, 0, c, s},
           {0, 1, 0, 0}}};
}

}  // namespace mcvqe
