// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mcvqe/aiem.hpp"
#include "mcvqe/circuit.hpp"
#include "mcvqe/system.hpp"

namespace mcvqe::testing {

// Random circuit over the restricted gate set, used by the shift-rule and
// tomography property tests.
inline Circuit random_circuit(std::mt19937_64& rng, int num_qubits,
                              int max_params) {
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  std::uniform_int_distribution<int> qubit(0, num_qubits - 1);
  std::uniform_int_distribution<int> kind(0, 4);
  Circuit c(num_qubits);
  int params = 0;
  int guard = 0;
  while (params < max_params && ++guard < 200) {
    switch (kind(rng)) {
      case 0:
        c.add_ry(qubit(rng), angle(rng));
        ++params;
        break;
      case 1: {
        if (num_qubits < 2) break;
        int a = qubit(rng), b = qubit(rng);
        if (a != b) c.add_cnot(a, b);
        break;
      }
      case 2: {
        if (num_qubits < 2) break;
        int a = qubit(rng), b = qubit(rng);
        if (a != b) c.add_cz(a, b);
        break;
      }
      case 3:
        c.add_h(qubit(rng));
        break;
      case 4: {
        if (num_qubits < 2) break;
        int a = qubit(rng), b = qubit(rng);
        if (a != b) {
          c.add_fy(a, b, angle(rng));
          ++params;
        }
        break;
      }
    }
  }
  if (c.num_parameters() == 0) c.add_ry(0, angle(rng));
  return c;
}

inline Observable random_observable(std::mt19937_64& rng, int num_qubits,
                                    int num_terms) {
  std::uniform_real_distribution<double> weight(-1.0, 1.0);
  std::uniform_int_distribution<int> qubit(0, num_qubits - 1);
  std::uniform_int_distribution<int> axis(0, 1);
  std::uniform_int_distribution<int> arity(1, num_qubits >= 2 ? 2 : 1);
  Observable obs;
  obs.constant = weight(rng);
  for (int t = 0; t < num_terms; ++t) {
    const auto ax = [&] { return axis(rng) ? PauliAxis::X : PauliAxis::Z; };
    if (arity(rng) == 1) {
      obs.terms.emplace_back(PauliString(qubit(rng), ax()), weight(rng));
    } else {
      int a = qubit(rng), b = qubit(rng);
      if (a == b) b = (a + 1) % num_qubits;
      obs.terms.emplace_back(PauliString(a, ax(), b, ax()), weight(rng));
    }
  }
  return obs;
}

// Central finite difference of an observable over one circuit parameter,
// evaluated on the simulator itself: the independent oracle for the
// +-pi/4 shift rules.
inline double fd_parameter_gradient(const Circuit& circuit, const Observable& obs,
                                    int param, double h) {
  Circuit work = circuit;
  const double theta = circuit.parameter(param);
  work.set_parameter(param, theta + h);
  const double plus = observe(work, obs);
  work.set_parameter(param, theta - h);
  const double minus = observe(work, obs);
  return (plus - minus) / (2.0 * h);
}

inline double fd_parameter_hessian(const Circuit& circuit, const Observable& obs,
                                   int pi, int pj, double h) {
  Circuit work = circuit;
  const double ti = circuit.parameter(pi);
  const double tj = circuit.parameter(pj);
  if (pi == pj) {
    auto at = [&](double d) {
      work.set_parameter(pi, ti + d);
      const double value = observe(work, obs);
      work.set_parameter(pi, ti);
      return value;
    };
    return (at(h) - 2.0 * at(0) + at(-h)) / (h * h);
  }
  auto at = [&](double di, double dj) {
    work.set_parameter(pi, ti + di);
    work.set_parameter(pj, tj + dj);
    const double value = observe(work, obs);
    work.set_parameter(pi, ti);
    work.set_parameter(pj, tj);
    return value;
  };
  return (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
}

// The synthetic dimer used throughout the validation tests: a deliberately
// strong-coupling, truncated-entangler stress fixture with well-separated
// CIS states.
inline System dimer_fixture() {
  Geometry g;
  g.monomers.resize(2);
  g.monomers[0].atoms = {{{0.0, 0.0, 0.0}, 14.0}, {{2.48, 0.10, -0.05}, 12.0}};
  g.monomers[1].atoms = {{{5.8, 0.6, 0.4}, 15.0}, {{8.1, 0.9, 0.1}, 13.0}};
  std::vector<SyntheticMonomerParams> params = {
      {0.35, 0.30, 2.10, 2.25, 0.120, 1.10, 1.40, 1.30},
      {0.32, 0.28, 2.05, 2.20, 0.145, 1.00, 1.30, 1.25}};
  return make_synthetic_system(std::move(g), std::move(params));
}

// Dimer used by the dynamics experiments: heavy atoms and moderate couplings
// keep the monomers essentially stationary over a few hundred femtoseconds
// (the dipole-dipole model has no short-range repulsion, so the strongly
// coupled stress fixture above would collapse on this timescale).
inline System dynamics_fixture() {
  Geometry g;
  g.monomers.resize(2);
  g.monomers[0].atoms = {{{0.0, 0.0, 0.0}, 62.0}, {{2.40, 0.10, -0.05}, 58.0}};
  g.monomers[1].atoms = {{{7.5, 0.6, 0.4}, 70.0}, {{9.83, 0.9, 0.1}, 66.0}};
  std::vector<SyntheticMonomerParams> params = {
      {0.35, 0.30, 2.10, 2.25, 0.120, 1.45, 1.75, 1.60},
      {0.32, 0.28, 2.05, 2.20, 0.145, 1.3485, 1.6275, 1.488}};
  return make_synthetic_system(std::move(g), std::move(params));
}

// Six-monomer staggered chain for the entangler comparison study.
inline System hexamer_fixture() {
  struct Row {
    double ax, ay, az, bx, by, bz, ma, mb;
    SyntheticMonomerParams p;
  };
  const std::vector<Row> rows = {
      {0.00, 0.00, 0.00, 2.42, 0.08, -0.06, 14, 12,
       {0.35, 0.30, 2.10, 2.25, 0.120, 1.10, 1.40, 1.30}},
      {6.30, 0.55, 0.35, 8.62, 0.90, 0.10, 15, 13,
       {0.32, 0.28, 2.05, 2.20, 0.145, 1.00, 1.30, 1.25}},
      {12.8, -0.4, 0.20, 15.05, -0.1, -0.15, 14, 13,
       {0.34, 0.29, 2.08, 2.22, 0.130, 1.05, 1.35, 1.28}},
      {19.1, 0.30, -0.3, 21.45, 0.65, 0.05, 16, 12,
       {0.33, 0.27, 2.12, 2.28, 0.138, 1.08, 1.32, 1.22}},
      {25.6, -0.2, 0.40, 27.90, 0.15, 0.30, 15, 14,
       {0.36, 0.31, 2.06, 2.18, 0.125, 1.02, 1.38, 1.32}},
      {31.9, 0.45, 0.10, 34.25, 0.70, -0.20, 13, 12,
       {0.31, 0.26, 2.09, 2.24, 0.142, 1.12, 1.28, 1.20}}};
  Geometry g;
  std::vector<SyntheticMonomerParams> params;
  for (const Row& r : rows) {
    Monomer m;
    m.atoms = {{{r.ax, r.ay, r.az}, r.ma}, {{r.bx, r.by, r.bz}, r.mb}};
    g.monomers.push_back(std::move(m));
    params.push_back(r.p);
  }
  return make_synthetic_system(std::move(g), std::move(params));
}

// Random well-conditioned synthetic systems for the Hamiltonian-equivalence
// sweeps.
inline System random_system(std::mt19937_64& rng, int num_monomers) {
  std::uniform_real_distribution<double> jitter(-0.4, 0.4);
  std::uniform_real_distribution<double> dip(0.7, 1.4);
  std::uniform_real_distribution<double> gap(0.10, 0.16);
  Geometry g;
  std::vector<SyntheticMonomerParams> params;
  for (int a = 0; a < num_monomers; ++a) {
    Monomer m;
    const Eigen::Vector3d base(6.4 * a + jitter(rng), jitter(rng), jitter(rng));
    const Eigen::Vector3d bond(2.3 + 0.2 * jitter(rng), 0.3 * jitter(rng),
                               0.3 * jitter(rng));
    m.atoms = {{base, 12.0 + a}, {base + bond, 14.0 - 0.5 * a}};
    g.monomers.push_back(std::move(m));
    params.push_back({0.30 + 0.05 * jitter(rng), 0.27 + 0.05 * jitter(rng),
                      2.05, 2.20, gap(rng), dip(rng), dip(rng), dip(rng)});
  }
  return make_synthetic_system(std::move(g), std::move(params));
}

// Brute-force dense Hamiltonian assembled from the monomer-basis matrix
// elements in chemist's notation -- fully independent of the Pauli route.
inline Eigen::MatrixXd dense_hamiltonian_monomer_basis(
    const MonomerProperties& props, const DimerCouplings& couplings,
    const PairList& pairs) {
  const int n = pairs.num_monomers();
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  // occupation of monomer a in basis state i (qubit a = bit a; 1 = particle)
  auto occ = [](std::size_t i, int a) { return (i >> a) & 1u; };
  // one-body terms
  for (std::size_t i = 0; i < dim; ++i)
    for (int a = 0; a < n; ++a)
      h(i, i) += occ(i, a) ? props.eps_p[a] : props.eps_h[a];
  // two-body terms: 1/2 sum over ordered pairs of
  // (p_a q_a | v | r_b s_b) |p_a r_b><q_a s_b|
  auto channel = [](int p, int q) {
    if (p == 0 && q == 0) return static_cast<int>(kHole);
    if (p == 1 && q == 1) return static_cast<int>(kParticle);
    return static_cast<int>(kTransition);
  };
  for (int k = 0; k < pairs.size(); ++k) {
    const auto [a, b] = pairs.pairs()[k];
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q)
        for (int r = 0; r < 2; ++r)
          for (int s = 0; s < 2; ++s) {
            const double val = couplings.v[k](channel(p, q), channel(r, s));
            for (std::size_t col = 0; col < dim; ++col) {
              if (static_cast<int>(occ(col, a)) != q) continue;
              if (static_cast<int>(occ(col, b)) != s) continue;
              std::size_t row = col;
              row = (row & ~(std::size_t{1} << a)) |
                    (static_cast<std::size_t>(p) << a);
              row = (row & ~(std::size_t{1} << b)) |
                    (static_cast<std::size_t>(r) << b);
              h(row, col) += 0.5 * val;
            }
          }
  }
  return h;
}

}  // namespace mcvqe::testing
