// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#include "mcvqe/system.hpp"

#include <fstream>

#include <json.hpp>

#include "mcvqe/errors.hpp"
#include "mcvqe/oracle.hpp"

namespace mcvqe {

using nlohmann::json;

System make_synthetic_system(Geometry geometry,
                             std::vector<SyntheticMonomerParams> params,
                             std::optional<PairList> pairs) {
  System sys;
  sys.geometry = std::move(geometry);
  sys.synthetic_params = std::move(params);
  sys.pairs = pairs ? std::move(*pairs)
                    : PairList::chain(sys.geometry.num_monomers());
  if (sys.pairs.num_monomers() != sys.geometry.num_monomers())
    throw ValidationError("system: pair list does not match the monomer count");
  sys.synthetic = true;
  refresh_properties(sys);
  return sys;
}

System system_from_tabulated(const TabulatedSystem& tab) {
  System sys;
  sys.geometry = tab.geometry;
  sys.props = tab.props;
  sys.grads = tab.grads;
  sys.synthetic = false;
  if (tab.pairs.empty()) {
    sys.pairs = PairList::chain(sys.geometry.num_monomers());
  } else {
    // accept one-sided lists; close them under swap
    std::vector<std::pair<int, int>> closed = tab.pairs;
    for (const auto& [a, b] : tab.pairs) {
      bool found = false;
      for (const auto& [c, d] : closed)
        if (c == b && d == a) {
          found = true;
          break;
        }
      if (!found) closed.emplace_back(b, a);
    }
    sys.pairs = PairList(sys.geometry.num_monomers(), std::move(closed));
  }
  return sys;
}

System load_synthetic_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open system file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("system file parse error: " + std::string(e.what()));
  }
  if (!doc.contains("monomers") || !doc["monomers"].is_array() ||
      doc["monomers"].empty())
    throw ValidationError("system file: 'monomers' must be a non-empty array");

  Geometry geometry;
  std::vector<SyntheticMonomerParams> params;
  for (std::size_t a = 0; a < doc["monomers"].size(); ++a) {
    const json& jm = doc["monomers"][a];
    const std::string tag = "monomers[" + std::to_string(a) + "]";
    auto num = [&](const char* key) {
      if (!jm.contains(key) || !jm[key].is_number())
        throw ValidationError("system file: missing numeric field '" + tag +
                              "." + key + "'");
      return jm[key].get<double>();
    };
    Monomer mono;
    if (!jm.contains("atoms") || !jm["atoms"].is_array() || jm["atoms"].size() < 2)
      throw ValidationError("system file: '" + tag + ".atoms' needs >= 2 entries");
    for (const json& ja : jm["atoms"]) {
      if (!ja.contains("xyz") || !ja["xyz"].is_array() || ja["xyz"].size() != 3 ||
          !ja.contains("mass"))
        throw ValidationError("system file: malformed atom in '" + tag + "'");
      Atom atom;
      for (int i = 0; i < 3; ++i) atom.xyz[i] = ja["xyz"][i].get<double>();
      atom.mass = ja["mass"].get<double>();
      mono.atoms.push_back(atom);
    }
    geometry.monomers.push_back(std::move(mono));
    params.push_back({num("k_h"), num("k_p"), num("d_h"), num("d_p"),
                      num("delta_e"), num("m_h"), num("m_p"), num("m_t")});
  }

  std::optional<PairList> pairs;
  if (doc.contains("pairs")) {
    std::vector<std::pair<int, int>> p;
    for (const json& jp : doc["pairs"]) {
      if (!jp.is_array() || jp.size() != 2)
        throw ValidationError("system file: malformed 'pairs' entry");
      p.emplace_back(jp[0].get<int>(), jp[1].get<int>());
    }
    // close under swap for convenience
    std::vector<std::pair<int, int>> closed = p;
    for (const auto& [a, b] : p) {
      bool found = false;
      for (const auto& [c, d] : closed)
        if (c == b && d == a) {
          found = true;
          break;
        }
      if (!found) closed.emplace_back(b, a);
    }
    pairs = PairList(geometry.num_monomers(), std::move(closed));
  }
  return make_synthetic_system(std::move(geometry), std::move(params),
                               std::move(pairs));
}

void refresh_properties(System& system) {
  if (!system.synthetic)
    throw ValidationError(
        "tabulated systems carry fixed properties; cannot re-evaluate at a "
        "new geometry");
  std::tie(system.props, system.grads) =
      synthetic_properties(system.geometry, system.synthetic_params);
}

std::string method_label(const MethodSpec& spec) {
  switch (spec.method) {
    case Method::Fci:
      return "FCI";
    case Method::Cis:
      return "CIS";
    case Method::McVqe:
      return std::string("VQE(") + (spec.toggles.vqe ? "Y" : "N") + "," +
             (spec.toggles.crs ? "Y" : "N") + ")";
  }
  return "?";
}

namespace {

int checked_num_states(const PairList& pairs, const MethodSpec& spec) {
  const int ns = spec.options.num_states;
  if (ns < 1) throw ValidationError("num_states must be >= 1");
  if (spec.method != Method::Fci && ns > pairs.num_monomers() + 1)
    throw ValidationError("num_states exceeds the CIS space dimension");
  return ns;
}

}  // namespace

Eigen::VectorXd state_energies(const PauliCoeffs& h, const PairList& pairs,
                               const MethodSpec& spec,
                               const Eigen::VectorXd* warm_theta,
                               Eigen::VectorXd* theta_out, SolveInfo* info) {
  const int ns = checked_num_states(pairs, spec);
  switch (spec.method) {
    case Method::Fci: {
      const DenseSpectrum spectrum = fci_solve(h, pairs);
      return spectrum.energies.head(std::min<Eigen::Index>(ns, spectrum.energies.size()));
    }
    case Method::Cis: {
      const CisStates cis = solve_cis(build_cis(h, pairs));
      return cis.energies.head(ns);
    }
    case Method::McVqe: {
      const CisStates cis = solve_cis(build_cis(h, pairs));
      McVqe engine(h, pairs, cis, spec.layout, spec.options);
      const McVqeSolution sol = engine.solve(warm_theta);
      if (theta_out) *theta_out = sol.theta;
      if (info) {
        info->vqe_iterations = sol.iterations;
        info->vqe_grad_norm = sol.grad_norm;
      }
      return sol.energies;
    }
  }
  throw ValidationError("unknown method");
}

GradientResult compute_gradient(const System& system, const MethodSpec& spec,
                                int state, const Eigen::VectorXd* warm_theta) {
  const int ns = checked_num_states(system.pairs, spec);
  if (state < 0 || state >= ns)
    throw ValidationError("gradient: state index must lie below num_states");
  if (!system.grads.complete && !system.synthetic)
    throw ValidationError(
        "gradient: tabulated system has incomplete property gradients");

  const DimerCouplings couplings = build_couplings(system.props, system.pairs);
  const PauliCoeffs h = build_pauli(system.props, couplings, system.pairs);

  GradientResult out;
  switch (spec.method) {
    case Method::Fci: {
      const DenseSpectrum spectrum = fci_solve(h, system.pairs);
      out.energies = spectrum.energies.head(
          std::min<Eigen::Index>(ns, spectrum.energies.size()));
      // variational eigenstate: relaxed = unrelaxed expectation values
      out.densities.unrelaxed = fci_densities(spectrum, system.pairs, state);
      out.densities.relaxed = out.densities.unrelaxed;
      out.densities.vqe_response = PauliCoeffs::zero(system.pairs);
      out.densities.crs_response = PauliCoeffs::zero(system.pairs);
      break;
    }
    case Method::Cis: {
      const CisStates cis = solve_cis(build_cis(h, system.pairs));
      out.energies = cis.energies.head(ns);
      out.densities.unrelaxed = cis_densities(cis, state, system.pairs);
      out.densities.relaxed = out.densities.unrelaxed;
      out.densities.vqe_response = PauliCoeffs::zero(system.pairs);
      out.densities.crs_response = PauliCoeffs::zero(system.pairs);
      break;
    }
    case Method::McVqe: {
      const CisStates cis = solve_cis(build_cis(h, system.pairs));
      McVqe engine(h, system.pairs, cis, spec.layout, spec.options);
      const McVqeSolution sol = engine.solve(warm_theta);
      out.energies = sol.energies;
      out.theta = sol.theta;
      out.info.vqe_iterations = sol.iterations;
      out.info.vqe_grad_norm = sol.grad_norm;
      out.densities = relaxed_densities(engine, sol, state, spec.toggles);
      out.info.hessian_regularized = out.densities.hessian_regularized;
      out.info.se_residual = out.densities.se_residual;
      break;
    }
  }
  const MonomerCoeffs basis =
      pauli_to_monomer_dm(out.densities.relaxed, system.pairs);
  out.monomer = monomer_property_densities(basis, system.props, system.pairs);
  out.gradient = nuclear_gradient(out.monomer, system.grads, system.geometry);
  return out;
}

Eigen::VectorXd compute_energies(const System& system, const MethodSpec& spec,
                                 const Eigen::VectorXd* warm_theta,
                                 Eigen::VectorXd* theta_out, SolveInfo* info) {
  const DimerCouplings couplings = build_couplings(system.props, system.pairs);
  const PauliCoeffs h = build_pauli(system.props, couplings, system.pairs);
  return state_energies(h, system.pairs, spec, warm_theta, theta_out, info);
}

}  // namespace mcvqe
