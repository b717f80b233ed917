// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace mcvqe {

enum class PauliAxis { X, Z };

struct PauliTerm {
  int qubit;
  PauliAxis axis;
};

// Tensor product of at most two single-qubit X/Z factors on distinct qubits.
// The empty string is the identity.
class PauliString {
public:
  PauliString() = default;
  PauliString(int qubit, PauliAxis axis);
  PauliString(int qubit_a, PauliAxis axis_a, int qubit_b, PauliAxis axis_b);

  std::span<const PauliTerm> terms() const { return {terms_.data(), size_}; }
  std::size_t size() const { return size_; }

private:
  std::size_t size_ = 0;
  std::array<PauliTerm, 2> terms_{};
};

// Real-amplitude statevector over N qubits. The gate set (Ry, CNOT, CZ, H, Fy)
// has real matrix elements in the full-angle Ry convention, so complex storage
// is never needed; the constructor and gates preserve the 2-norm.
//
// Basis convention: qubit q occupies bit q of the amplitude index, so the
// singly-excited ket with qubit A set lives at index (1 << A).
class Statevector {
public:
  explicit Statevector(int num_qubits);  // |0...0>
  static Statevector from_amplitudes(int num_qubits, std::vector<double> amp);

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amp_.size(); }
  double operator[](std::size_t i) const { return amp_[i]; }
  double& operator[](std::size_t i) { return amp_[i]; }
  const std::vector<double>& amplitudes() const { return amp_; }

  double norm() const;

  // In-place gates. Ry uses the full-angle convention
  //   Ry(theta) = [[cos t, -sin t], [sin t, cos t]],
  // i.e. exp(-i theta Y); observables are pi-periodic in theta, which is what
  // the +-pi/4 shift rules assume. Most simulators use the half-angle
  // convention instead -- angles here are twice as "fast".
  void apply_ry(int qubit, double theta);
  void apply_h(int qubit);
  void apply_cnot(int control, int target);
  void apply_cz(int qubit_a, int qubit_b);
  // Composite excitation-transfer gate: Ry_b(theta_left), CZ(a,b),
  // Ry_b(theta_right), CNOT(b->a). The canonical gate has
  // theta_left = -theta/2, theta_right = +theta/2.
  void apply_fy(int qubit_a, int qubit_b, double theta_left, double theta_right);

private:
  void check_qubit(int q) const;

  int num_qubits_ = 0;
  std::vector<double> amp_;
};

// <psi|P|psi>, exact contraction over the statevector.
double expectation(const Statevector& state, const PauliString& op);

// One pass per string; all strings share the same prepared state.
void expectations(const Statevector& state, std::span<const PauliString> ops,
                  std::span<double> out);

// The 4x4 matrix of the canonical Fy(theta) gate on the ordered two-qubit
// subspace (|00>,|01>,|10>,|11>) with qubit_a the high bit. Used by tests to
// pin the gate-sequence realization to its closed form.
std::array<std::array<double, 4>, 4> fy_matrix(double theta);

}  // namespace mcvqe
