// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace mcvqe {

// All quantities are atomic units: hartree, bohr, a.u. dipoles. Unit
// conversions happen at file boundaries only.

struct Atom {
  Eigen::Vector3d xyz;  // bohr
  double mass;          // amu
};

struct Monomer {
  std::vector<Atom> atoms;
};

struct Geometry {
  std::vector<Monomer> monomers;

  int num_monomers() const { return static_cast<int>(monomers.size()); }
  int num_atoms() const;
  // Flat (atom-major, xyz) views used by the dynamics integrator.
  Eigen::VectorXd positions() const;
  void set_positions(const Eigen::VectorXd& flat);
  Eigen::VectorXd atom_masses() const;
};

// Per-monomer two-level electronic data: hole/particle energies, the three
// dipoles, and the mass-weighted centroid.
struct MonomerProperties {
  Eigen::VectorXd eps_h, eps_p;
  std::vector<Eigen::Vector3d> mu_h, mu_p, mu_t, r0;

  int num_monomers() const { return static_cast<int>(eps_h.size()); }
};

// Nuclear gradients of the properties, indexed [monomer][atom-of-monomer].
// Dipole/centroid blocks are 3x3 with (i,j) = d prop_i / d r_j. Gradients
// with respect to atoms of other monomers are identically zero and are not
// stored.
struct MonomerPropertyGradients {
  std::vector<std::vector<Eigen::Vector3d>> eps_h, eps_p;
  std::vector<std::vector<Eigen::Matrix3d>> mu_h, mu_p, mu_t, r0;
  bool complete = true;  // false when a tabulated file omitted gradients
};

// Harmonic two-state monomer: with d the first intra-monomer bond length and
// u its unit vector,
//   eps_h = k_h (d - d_h)^2 / 2,  eps_p = delta_e + k_p (d - d_p)^2 / 2,
//   mu_x  = m_x u  for x in {h, p, t}.
// Everything is closed form, so the full nuclear gradient is exactly
// testable and the dynamics conserve energy up to integrator error.
struct SyntheticMonomerParams {
  double k_h, k_p;      // hartree / bohr^2
  double d_h, d_p;      // bohr
  double delta_e;       // hartree
  double m_h, m_p, m_t; // a.u. dipole magnitudes
};

std::pair<MonomerProperties, MonomerPropertyGradients> synthetic_properties(
    const Geometry& geometry, const std::vector<SyntheticMonomerParams>& params);

// Externally computed monomer data plus the geometry and pair list it was
// computed for. See the JSON schema in load_tabulated.
struct TabulatedSystem {
  Geometry geometry;
  MonomerProperties props;
  MonomerPropertyGradients grads;
  std::vector<std::pair<int, int>> pairs;
  bool gradients_present = true;
};

// JSON schema:
//   {"monomers": [{"atoms": [{"xyz": [x,y,z], "mass": m}, ...],
//                  "eps_h": e, "eps_p": e,
//                  "mu_h": [3], "mu_p": [3], "mu_t": [3],
//                  "grad": {"eps_h": [[3] per atom], "mu_t": [[9] per atom,
//                           row-major d mu_i/d r_j], ...}},   // optional
//                 ...],
//    "pairs": [[0,1], ...]}
// Missing gradient blocks default to zero and clear gradients_present.
TabulatedSystem load_tabulated(const std::string& path);
void save_tabulated(const std::string& path, const TabulatedSystem& system);

}  // namespace mcvqe
