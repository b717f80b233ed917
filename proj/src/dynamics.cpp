// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#include "mcvqe/dynamics.hpp"

#include <cmath>
#include <ostream>
#include <random>

#include "mcvqe/errors.hpp"

namespace mcvqe {

std::vector<Eigen::Vector3d> maxwell_velocities(const Geometry& geometry,
                                                double temperature,
                                                std::uint64_t seed) {
  if (temperature < 0.0)
    throw ValidationError("maxwell_velocities: negative temperature");
  const int natoms = geometry.num_atoms();
  std::vector<Eigen::Vector3d> v(natoms, Eigen::Vector3d::Zero());
  if (temperature == 0.0) return v;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Eigen::VectorXd masses =
      geometry.atom_masses() * kElectronMassPerAmu;
  for (int z = 0; z < natoms; ++z) {
    const double sigma = std::sqrt(kBoltzmannHartree * temperature / masses[z]);
    for (int i = 0; i < 3; ++i) v[z][i] = sigma * gauss(rng);
  }
  return v;
}

void velocity_verlet_step(MdState& state, const Eigen::VectorXd& masses,
                          const ForceFn& force, double dt) {
  if (dt <= 0.0) throw ValidationError("velocity_verlet_step: dt must be > 0");
  const int natoms = static_cast<int>(state.positions.size());
  for (int z = 0; z < natoms; ++z) {
    state.velocities[z] += (0.5 * dt / masses[z]) * state.forces[z];
    state.positions[z] += dt * state.velocities[z];
  }
  state.potential = force(state.positions, state.forces);
  for (int z = 0; z < natoms; ++z)
    state.velocities[z] += (0.5 * dt / masses[z]) * state.forces[z];
}

namespace {

double kinetic_energy(const std::vector<Eigen::Vector3d>& velocities,
                      const Eigen::VectorXd& masses) {
  double e = 0.0;
  for (std::size_t z = 0; z < velocities.size(); ++z)
    e += 0.5 * masses[z] * velocities[z].squaredNorm();
  return e;
}

}  // namespace

Trajectory run_dynamics(const System& system, const MethodSpec& spec,
                        int state, int steps, double dt, double temperature,
                        std::uint64_t seed) {
  if (!system.synthetic)
    throw ValidationError("dynamics needs a synthetic system");
  if (state < 0 || state >= spec.options.num_states)
    throw ValidationError("dynamics: active state must lie below num_states");

  System work = system;
  const Eigen::VectorXd masses =
      work.geometry.atom_masses() * kElectronMassPerAmu;
  const int natoms = work.geometry.num_atoms();

  Trajectory traj;
  Eigen::VectorXd theta;  // warm start carried across steps
  bool have_theta = false;
  Eigen::VectorXd energies;
  int last_iterations = 0;

  auto surface = [&](const std::vector<Eigen::Vector3d>& positions,
                     std::vector<Eigen::Vector3d>& forces) {
    Eigen::VectorXd flat(3 * natoms);
    for (int z = 0; z < natoms; ++z) flat.segment<3>(3 * z) = positions[z];
    work.geometry.set_positions(flat);
    refresh_properties(work);
    const GradientResult res =
        compute_gradient(work, spec, state, have_theta ? &theta : nullptr);
    if (spec.method == Method::McVqe) {
      theta = res.theta;
      have_theta = true;
    }
    energies = res.energies;
    last_iterations = res.info.vqe_iterations;
    forces.resize(natoms);
    for (int z = 0; z < natoms; ++z) forces[z] = -res.gradient[z];
    return res.energies[state];
  };

  MdState md;
  md.positions.resize(natoms);
  {
    const Eigen::VectorXd flat = work.geometry.positions();
    for (int z = 0; z < natoms; ++z) md.positions[z] = flat.segment<3>(3 * z);
  }
  md.velocities = maxwell_velocities(work.geometry, temperature, seed);

  auto record = [&](int step) {
    TrajectoryFrame frame;
    frame.step = step;
    frame.time = step * dt;
    frame.positions = md.positions;
    frame.velocities = md.velocities;
    frame.state_energies = energies;
    frame.potential = md.potential;
    frame.kinetic = kinetic_energy(md.velocities, masses);
    frame.total = frame.kinetic + frame.potential;
    frame.solver_iterations = last_iterations;
    traj.frames.push_back(std::move(frame));
  };

  try {
    md.potential = surface(md.positions, md.forces);
    record(0);
    for (int step = 1; step <= steps; ++step) {
      velocity_verlet_step(md, masses, surface, dt);
      record(step);
    }
  } catch (const std::exception& e) {
    traj.failed = true;
    traj.failure = e.what();
  }

  if (!traj.frames.empty()) {
    double mean = 0.0;
    for (const TrajectoryFrame& f : traj.frames) mean += f.total;
    mean /= static_cast<double>(traj.frames.size());
    for (const TrajectoryFrame& f : traj.frames)
      traj.max_excursion = std::max(traj.max_excursion, std::abs(f.total - mean));
  }
  return traj;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  if (trajectory.frames.empty()) return;
  const auto& first = trajectory.frames.front();
  out << "step,t_au,E_kin,E_pot,E_tot";
  for (int s = 0; s < first.state_energies.size(); ++s) out << ",E_" << s;
  for (std::size_t z = 0; z < first.positions.size(); ++z)
    out << ",x_" << z << ",y_" << z << ",z_" << z;
  out << "\n";
  char buf[32];
  auto emit = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << ',' << buf;
  };
  for (const TrajectoryFrame& f : trajectory.frames) {
    out << f.step;
    emit(f.time);
    emit(f.kinetic);
    emit(f.potential);
    emit(f.total);
    for (int s = 0; s < f.state_energies.size(); ++s) emit(f.state_energies[s]);
    for (const Eigen::Vector3d& r : f.positions) {
      emit(r[0]);
      emit(r[1]);
      emit(r[2]);
    }
    out << "\n";
  }
}

}  // namespace mcvqe
