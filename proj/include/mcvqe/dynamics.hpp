// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mcvqe/system.hpp"

namespace mcvqe {

// Boltzmann constant in hartree/kelvin.
inline constexpr double kBoltzmannHartree = 3.166811563e-6;

// Geometry stores masses in amu; the integrator works in atomic units
// (hartree, bohr, hbar/E_h time), where the mass unit is the electron mass.
inline constexpr double kElectronMassPerAmu = 1822.888486209;

// Maxwellian velocities at temperature T: each Cartesian component is
// Gaussian with variance k_B T / m. Deterministic under the seed, so an
// identical seed reproduces identical initial conditions across methods.
std::vector<Eigen::Vector3d> maxwell_velocities(const Geometry& geometry,
                                                double temperature,
                                                std::uint64_t seed);

// Returns the potential and fills forces (-dE/dr), one entry per atom.
using ForceFn = std::function<double(const std::vector<Eigen::Vector3d>& positions,
                                     std::vector<Eigen::Vector3d>& forces)>;

struct MdState {
  std::vector<Eigen::Vector3d> positions, velocities, forces;
  double potential = 0.0;
};

// Standard velocity Verlet: half kick, drift, one force evaluation at the
// new positions, half kick. The cached force is reused, so each step costs
// exactly one gradient evaluation.
void velocity_verlet_step(MdState& state, const Eigen::VectorXd& masses,
                          const ForceFn& force, double dt);

struct TrajectoryFrame {
  int step = 0;
  double time = 0.0;  // a.u.
  std::vector<Eigen::Vector3d> positions, velocities;
  Eigen::VectorXd state_energies;
  double potential = 0.0, kinetic = 0.0, total = 0.0;
  int solver_iterations = 0;
};

struct Trajectory {
  std::vector<TrajectoryFrame> frames;
  double max_excursion = 0.0;  // max |E_tot - mean E_tot|
  bool failed = false;
  std::string failure;
};

// NVE dynamics on the chosen adiabatic surface (default experiment: S1).
// MC-VQE warm-starts each step's SA-VQE solve from the previous step's
// angles; a mid-trajectory solver failure truncates the trajectory and
// records the reason instead of propagating.
Trajectory run_dynamics(const System& system, const MethodSpec& spec,
                        int state, int steps, double dt, double temperature,
                        std::uint64_t seed);

// CSV columns: step, t_au, E_kin, E_pot, E_tot, E_0..E_{N_Theta-1}, then
// per-atom x,y,z. Decimal doubles at 17 significant digits, so re-reading
// reproduces the in-memory values bit-exactly.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace mcvqe
