// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "mcvqe/circuit.hpp"
#include "mcvqe/monomer_model.hpp"

namespace mcvqe {

// Dipole channel order used everywhere a 3x3 coupling block appears:
// hole, transition, particle.
enum DipoleKind { kHole = 0, kTransition = 1, kParticle = 2 };

// Ordered significant pairs <A,A'>, closed under swap, A != A'. Distant pairs
// simply do not appear; screening is membership, not thresholding.
class PairList {
public:
  PairList() = default;
  PairList(int num_monomers, std::vector<std::pair<int, int>> ordered_pairs);
  // Nearest-neighbor chain (0,1),(1,0),(1,2),(2,1),...
  static PairList chain(int num_monomers);

  int num_monomers() const { return num_monomers_; }
  int size() const { return static_cast<int>(pairs_.size()); }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  // Slot of ordered pair (a,b), or -1 when not coupled.
  int index(int a, int b) const { return index_(a, b); }

private:
  int num_monomers_ = 0;
  std::vector<std::pair<int, int>> pairs_;
  Eigen::MatrixXi index_;
};

// Coefficients of the Pauli-basis AIEM Hamiltonian -- or any covector in the
// same space: Pauli density matrices and finite-difference perturbation
// directions reuse this container. Slot `e` is the identity coefficient,
// carried as a first-class entry with density 1 so chain rules stay uniform.
struct PauliCoeffs {
  double e = 0.0;
  Eigen::VectorXd x, z;            // per monomer
  Eigen::VectorXd xx, xz, zx, zz;  // per ordered pair slot

  static PauliCoeffs zero(const PairList& pairs);
  PauliCoeffs& operator+=(const PauliCoeffs& o);
  PauliCoeffs& operator-=(const PauliCoeffs& o);
  PauliCoeffs& operator*=(double s);
  void add_scaled(double s, const PauliCoeffs& o);
  double max_abs() const;

  // Flat layout [e | x | z | xx | xz | zx | zz]; the FD drivers and the
  // monomer-basis transpose work on this vector form.
  Eigen::VectorXd to_vector() const;
  static PauliCoeffs from_vector(const Eigen::VectorXd& v, const PairList& pairs);
};

// Monomer-basis matrix elements (or densities): per-monomer eps_h/eps_p plus
// the formal eps_t slot (value always 0, but the derivative direction
// exists), and the 9 coupling channels per ordered pair.
struct MonomerCoeffs {
  Eigen::VectorXd eps_h, eps_p, eps_t;
  std::vector<Eigen::Matrix3d> v;  // [pair](DipoleKind, DipoleKind)

  static MonomerCoeffs zero(const PairList& pairs);
  // Flat layout [eps_h | eps_p | eps_t | v...] with v row-major per pair.
  Eigen::VectorXd to_vector() const;
  static MonomerCoeffs from_vector(const Eigen::VectorXd& v, const PairList& pairs);
};

struct DimerCouplings {
  std::vector<Eigen::Matrix3d> v;  // [pair](kind on first monomer, kind on second)
};

// Dipole-dipole interaction v = mu_a.mu_b/r^3 - 3 (mu_a.r)(mu_b.r)/r^5 with
// r = r0_b - r0_a.
double dipole_coupling(const Eigen::Vector3d& mu_a, const Eigen::Vector3d& mu_b,
                       const Eigen::Vector3d& r0_a, const Eigen::Vector3d& r0_b);

struct CouplingPartials {
  Eigen::Vector3d mu_a, mu_b;  // dv/d mu
  Eigen::Vector3d r0_a, r0_b;  // dv/d centroid
};
CouplingPartials coupling_partials(const Eigen::Vector3d& mu_a,
                                   const Eigen::Vector3d& mu_b,
                                   const Eigen::Vector3d& r0_a,
                                   const Eigen::Vector3d& r0_b);

DimerCouplings build_couplings(const MonomerProperties& props,
                               const PairList& pairs);

// Gathers (eps, v) into the monomer-basis coefficient vector feeding the
// Pauli transform. eps_t is identically zero.
MonomerCoeffs monomer_elements(const MonomerProperties& props,
                               const DimerCouplings& couplings,
                               const PairList& pairs);

// The linear monomer->Pauli coefficient map and its exact transpose. Both
// walk the same term list, so the adjoint identity
//   energy_pairing(monomer_to_pauli(m), g) = energy_pairing(m, pauli_to_monomer_dm(g))
// holds to round-off. Densities keep the stored conventions throughout: pair
// slots are symmetric-bump derivatives (expectation values on the Pauli
// side), with the pairing carrying the 1/2 on pair blocks.
PauliCoeffs monomer_to_pauli(const MonomerCoeffs& m, const PairList& pairs);
MonomerCoeffs pauli_to_monomer_dm(const PauliCoeffs& density, const PairList& pairs);

// The bilinear form that contracts coefficients with densities: plain dot on
// one-body slots, 1/2-weighted dot on ordered pair slots. The energy is
// energy_pairing(hamiltonian, densities) with the identity density at 1.
double energy_pairing(const PauliCoeffs& a, const PauliCoeffs& b);
double energy_pairing(const MonomerCoeffs& a, const MonomerCoeffs& b);

PauliCoeffs build_pauli(const MonomerProperties& props,
                        const DimerCouplings& couplings, const PairList& pairs);

// (N+1)x(N+1) CIS matrix over {|0>, |A>}.
Eigen::MatrixXd build_cis(const PauliCoeffs& h, const PairList& pairs);

// Contraction sum_{II'} D_{II'} dH_CIS/d(slot) for every Pauli slot; D is
// symmetrized first. Shared by the CRS response density and the CIS oracle
// densities.
PauliCoeffs cis_hamiltonian_adjoint(const Eigen::MatrixXd& d, const PairList& pairs);

// Measurement plumbing: the Pauli strings of the Hamiltonian support in a
// fixed order ([x per monomer | z per monomer | xx,xz,zx,zz per pair]), the
// coefficients as a weighted observable, and the inverse packing of measured
// expectation values (with e = 1).
std::vector<PauliString> pauli_basis(const PairList& pairs);
Observable to_observable(const PauliCoeffs& h, const PairList& pairs);
PauliCoeffs coeffs_from_measurements(const std::vector<double>& values,
                                     const PairList& pairs);

// Enumeration of Pauli coefficient slots with their symmetry-linked
// finite-difference directions: perturbing the (A,A') slot of a pair channel
// also perturbs the partner slot ((A',A) of the mirrored channel), which is
// the same physical degree of freedom stored twice.
struct PauliSlot {
  enum Kind { E, X, Z, XX, XZ, ZX, ZZ } kind;
  int monomer = -1;  // X/Z
  int pair = -1;     // two-body channels
};
std::vector<PauliSlot> enumerate_pauli_slots(const PairList& pairs);
PauliCoeffs slot_direction(const PauliSlot& slot, const PairList& pairs);
double slot_value(const PauliCoeffs& c, const PauliSlot& slot);

}  // namespace mcvqe
