// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#include "mcvqe/validate.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "mcvqe/errors.hpp"

namespace mcvqe {

namespace {
constexpr double kBohrPerAngstrom = 1.8897261246257702;
}

double default_step(ValidationLayer layer) {
  switch (layer) {
    case ValidationLayer::Pauli:
      return 1e-7;
    case ValidationLayer::Monomer:
      return 1e-7;
    case ValidationLayer::Property:
      return 1e-6;
    case ValidationLayer::Nuclear:
      return 0.002 * kBohrPerAngstrom;
  }
  return 1e-7;
}

std::string layer_name(ValidationLayer layer) {
  switch (layer) {
    case ValidationLayer::Pauli:
      return "pauli";
    case ValidationLayer::Monomer:
      return "monomer";
    case ValidationLayer::Property:
      return "property";
    case ValidationLayer::Nuclear:
      return "nuclear";
  }
  return "?";
}

ValidationLayer layer_from_name(const std::string& name) {
  if (name == "pauli") return ValidationLayer::Pauli;
  if (name == "monomer") return ValidationLayer::Monomer;
  if (name == "property") return ValidationLayer::Property;
  if (name == "nuclear") return ValidationLayer::Nuclear;
  throw ValidationError("unknown validation layer: " + name);
}

namespace {

struct ClassTracker {
  std::vector<std::string> order;
  std::map<std::string, double> max_dev;
  void record(const std::string& cls, double dev) {
    if (!max_dev.count(cls)) order.push_back(cls);
    double& slot = max_dev[cls];
    slot = std::max(slot, std::abs(dev));
  }
  DeviationRow finish(const std::string& method) const {
    DeviationRow row;
    row.method = method;
    for (const std::string& cls : order) {
      row.classes.emplace_back(cls, max_dev.at(cls));
      row.worst = std::max(row.worst, max_dev.at(cls));
    }
    return row;
  }
};

// One perturbation to compare: the direction is expressed as a callback that
// produces perturbed state energies, and `analytic` is the matching row of
// the analytic densities (per state).
struct Probe {
  std::string cls;
  std::function<Eigen::VectorXd(double)> energies_at;  // f(+-h)
  Eigen::VectorXd analytic;
};

DeviationRow run_probes(const std::string& label, const std::vector<Probe>& probes,
                        double h, int num_states) {
  ClassTracker tracker;
  for (const Probe& probe : probes) {
    const Eigen::VectorXd plus = probe.energies_at(+h);
    const Eigen::VectorXd minus = probe.energies_at(-h);
    for (int s = 0; s < num_states; ++s) {
      const double fd = (plus[s] - minus[s]) / (2.0 * h);
      tracker.record(probe.cls, fd - probe.analytic[s]);
    }
  }
  return tracker.finish(label);
}

std::string pauli_class(PauliSlot::Kind kind) {
  switch (kind) {
    case PauliSlot::X:
      return "X";
    case PauliSlot::Z:
      return "Z";
    case PauliSlot::XX:
      return "XX";
    case PauliSlot::XZ:
    case PauliSlot::ZX:
      return "XZ/ZX";
    case PauliSlot::ZZ:
      return "ZZ";
    default:
      return "E";
  }
}

}  // namespace

std::vector<DeviationRow> validate_layer(const System& system,
                                         ValidationLayer layer,
                                         const std::vector<MethodSpec>& methods,
                                         double step) {
  const double h = step > 0.0 ? step : default_step(layer);
  if (layer == ValidationLayer::Nuclear && !system.synthetic)
    throw ValidationError(
        "nuclear validation needs a synthetic system (tabulated properties "
        "cannot be re-evaluated at displaced geometries)");

  const DimerCouplings couplings = build_couplings(system.props, system.pairs);
  const MonomerCoeffs m0 = monomer_elements(system.props, couplings, system.pairs);
  const PauliCoeffs h0 = monomer_to_pauli(m0, system.pairs);
  const int n = system.pairs.num_monomers();

  std::vector<DeviationRow> rows;
  for (const MethodSpec& spec : methods) {
    const int ns = spec.options.num_states;

    // analytic bundle per state, plus the warm-start angles for the FD runs
    std::vector<GradientResult> analytic;
    analytic.reserve(ns);
    for (int s = 0; s < ns; ++s)
      analytic.push_back(compute_gradient(system, spec, s,
                                          s == 0 || analytic.empty()
                                              ? nullptr
                                              : &analytic.front().theta));
    const Eigen::VectorXd* warm =
        spec.method == Method::McVqe ? &analytic.front().theta : nullptr;

    // everything the stored probe lambdas capture by reference must outlive
    // run_probes below, so the shared evaluators live at this scope
    auto energies_for_pauli = [&](const PauliCoeffs& hp) {
      return state_energies(hp, system.pairs, spec, warm);
    };
    auto energies_for_props = [&](const MonomerProperties& props) {
      const DimerCouplings c = build_couplings(props, system.pairs);
      return energies_for_pauli(build_pauli(props, c, system.pairs));
    };
    const Eigen::VectorXd base_pos = system.geometry.positions();

    std::vector<Probe> probes;
    auto per_state = [&](auto getter) {
      Eigen::VectorXd v(ns);
      for (int s = 0; s < ns; ++s) v[s] = getter(analytic[s]);
      return v;
    };

    switch (layer) {
      case ValidationLayer::Pauli: {
        for (const PauliSlot& slot : enumerate_pauli_slots(system.pairs)) {
          if (slot.kind == PauliSlot::E) continue;  // identity density is 1
          const PauliCoeffs dir = slot_direction(slot, system.pairs);
          probes.push_back(
              {pauli_class(slot.kind),
               [&, dir](double d) {
                 PauliCoeffs hp = h0;
                 hp.add_scaled(d, dir);
                 return energies_for_pauli(hp);
               },
               per_state([&](const GradientResult& g) {
                 return slot_value(g.densities.relaxed, slot);
               })});
        }
        break;
      }
      case ValidationLayer::Monomer: {
        auto eps_probe = [&](const std::string& cls, int a, int which) {
          probes.push_back(
              {cls,
               [&, a, which](double d) {
                 MonomerCoeffs mp = m0;
                 if (which == 0) mp.eps_h[a] += d;
                 if (which == 1) mp.eps_t[a] += d;
                 if (which == 2) mp.eps_p[a] += d;
                 return energies_for_pauli(monomer_to_pauli(mp, system.pairs));
               },
               per_state([&, a, which](const GradientResult& g) {
                 const MonomerCoeffs basis =
                     pauli_to_monomer_dm(g.densities.relaxed, system.pairs);
                 if (which == 0) return basis.eps_h[a];
                 if (which == 1) return basis.eps_t[a];
                 return basis.eps_p[a];
               })});
        };
        for (int a = 0; a < n; ++a) {
          eps_probe("gamma_H", a, 0);
          eps_probe("gamma_T", a, 1);
          eps_probe("gamma_P", a, 2);
        }
        for (int k = 0; k < system.pairs.size(); ++k) {
          const auto [a, b] = system.pairs.pairs()[k];
          const int mirror = system.pairs.index(b, a);
          for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
              probes.push_back(
                  {"Gamma_V",
                   [&, k, mirror, i, j](double d) {
                     MonomerCoeffs mp = m0;
                     mp.v[k](i, j) += d;       // and the same physical dof
                     mp.v[mirror](j, i) += d;  // stored in the mirror slot
                     return energies_for_pauli(
                         monomer_to_pauli(mp, system.pairs));
                   },
                   per_state([&, k, i, j](const GradientResult& g) {
                     return pauli_to_monomer_dm(g.densities.relaxed,
                                                system.pairs)
                         .v[k](i, j);
                   })});
            }
          }
        }
        break;
      }
      case ValidationLayer::Property: {
        auto dipole_probe = [&](const std::string& cls, int a, int i, int which) {
          probes.push_back(
              {cls,
               [&, a, i, which](double d) {
                 MonomerProperties props = system.props;
                 if (which == 0) props.mu_h[a][i] += d;
                 if (which == 1) props.mu_t[a][i] += d;
                 if (which == 2) props.mu_p[a][i] += d;
                 if (which == 3) props.r0[a][i] += d;
                 return energies_for_props(props);
               },
               per_state([&, a, i, which](const GradientResult& g) {
                 if (which == 0) return g.monomer.eta_h[a][i];
                 if (which == 1) return g.monomer.eta_t[a][i];
                 if (which == 2) return g.monomer.eta_p[a][i];
                 return g.monomer.xi[a][i];
               })});
        };
        for (int a = 0; a < n; ++a) {
          for (int i = 0; i < 3; ++i) {
            dipole_probe("eta_H", a, i, 0);
            dipole_probe("eta_T", a, i, 1);
            dipole_probe("eta_P", a, i, 2);
            dipole_probe("xi", a, i, 3);
          }
        }
        break;
      }
      case ValidationLayer::Nuclear: {
        for (int atom = 0; atom < system.geometry.num_atoms(); ++atom) {
          for (int i = 0; i < 3; ++i) {
            probes.push_back(
                {"grad",
                 [&, atom, i](double d) {
                   System sys = system;
                   Eigen::VectorXd pos = base_pos;
                   pos[3 * atom + i] += d;
                   sys.geometry.set_positions(pos);
                   refresh_properties(sys);
                   return compute_energies(sys, spec, warm);
                 },
                 per_state([&, atom, i](const GradientResult& g) {
                   return g.gradient[atom][i];
                 })});
          }
        }
        break;
      }
    }
    rows.push_back(run_probes(method_label(spec), probes, h, ns));
  }
  return rows;
}

}  // namespace mcvqe
