// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#include "mcvqe/monomer_model.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include <json.hpp>

#include "mcvqe/errors.hpp"

namespace mcvqe {

using nlohmann::json;

int Geometry::num_atoms() const {
  int n = 0;
  for (const Monomer& m : monomers) n += static_cast<int>(m.atoms.size());
  return n;
}

Eigen::VectorXd Geometry::positions() const {
  Eigen::VectorXd flat(3 * num_atoms());
  int k = 0;
  for (const Monomer& m : monomers)
    for (const Atom& a : m.atoms) flat.segment<3>(3 * k++) = a.xyz;
  return flat;
}

void Geometry::set_positions(const Eigen::VectorXd& flat) {
  if (flat.size() != 3 * num_atoms())
    throw ValidationError("Geometry: position vector size mismatch");
  int k = 0;
  for (Monomer& m : monomers)
    for (Atom& a : m.atoms) a.xyz = flat.segment<3>(3 * k++);
}

Eigen::VectorXd Geometry::atom_masses() const {
  Eigen::VectorXd mass(num_atoms());
  int k = 0;
  for (const Monomer& m : monomers)
    for (const Atom& a : m.atoms) mass[k++] = a.mass;
  return mass;
}

namespace {

void validate_geometry(const Geometry& geometry) {
  if (geometry.monomers.empty())
    throw ValidationError("geometry has no monomers");
  for (std::size_t a = 0; a < geometry.monomers.size(); ++a) {
    const Monomer& m = geometry.monomers[a];
    if (m.atoms.size() < 2)
      throw ValidationError("monomer " + std::to_string(a) +
                            " needs at least 2 atoms");
    for (const Atom& atom : m.atoms)
      if (!(atom.mass > 0.0))
        throw ValidationError("monomer " + std::to_string(a) +
                              " has a non-positive atom mass");
  }
}

}  // namespace

std::pair<MonomerProperties, MonomerPropertyGradients> synthetic_properties(
    const Geometry& geometry,
    const std::vector<SyntheticMonomerParams>& params) {
  validate_geometry(geometry);
  const int n = geometry.num_monomers();
  if (static_cast<int>(params.size()) != n)
    throw ValidationError("synthetic_properties: one parameter set per monomer required");

  MonomerProperties props;
  props.eps_h.resize(n);
  props.eps_p.resize(n);
  props.mu_h.resize(n);
  props.mu_p.resize(n);
  props.mu_t.resize(n);
  props.r0.resize(n);

  MonomerPropertyGradients grads;
  grads.eps_h.resize(n);
  grads.eps_p.resize(n);
  grads.mu_h.resize(n);
  grads.mu_p.resize(n);
  grads.mu_t.resize(n);
  grads.r0.resize(n);

  for (int a = 0; a < n; ++a) {
    const Monomer& mono = geometry.monomers[a];
    const SyntheticMonomerParams& p = params[a];
    const int natom = static_cast<int>(mono.atoms.size());

    const Eigen::Vector3d bond = mono.atoms[1].xyz - mono.atoms[0].xyz;
    const double d = bond.norm();
    if (d < 1e-8)
      throw ValidationError("monomer " + std::to_string(a) +
                            ": degenerate geometry, bond atoms coincide");
    const Eigen::Vector3d u = bond / d;

    props.eps_h[a] = 0.5 * p.k_h * (d - p.d_h) * (d - p.d_h);
    props.eps_p[a] = p.delta_e + 0.5 * p.k_p * (d - p.d_p) * (d - p.d_p);
    if (props.eps_p[a] < props.eps_h[a])
      throw ValidationError("monomer " + std::to_string(a) +
                            ": particle state fell below hole state");
    props.mu_h[a] = p.m_h * u;
    props.mu_p[a] = p.m_p * u;
    props.mu_t[a] = p.m_t * u;

    double total_mass = 0.0;
    Eigen::Vector3d r0 = Eigen::Vector3d::Zero();
    for (const Atom& atom : mono.atoms) {
      total_mass += atom.mass;
      r0 += atom.mass * atom.xyz;
    }
    props.r0[a] = r0 / total_mass;

    grads.eps_h[a].assign(natom, Eigen::Vector3d::Zero());
    grads.eps_p[a].assign(natom, Eigen::Vector3d::Zero());
    grads.mu_h[a].assign(natom, Eigen::Matrix3d::Zero());
    grads.mu_p[a].assign(natom, Eigen::Matrix3d::Zero());
    grads.mu_t[a].assign(natom, Eigen::Matrix3d::Zero());
    grads.r0[a].resize(natom);

    // d d/d r_1 = u, d d/d r_0 = -u; d u/d r_1 = (I - u u^T)/d.
    const Eigen::Matrix3d du = (Eigen::Matrix3d::Identity() - u * u.transpose()) / d;
    const Eigen::Vector3d dh = p.k_h * (d - p.d_h) * u;
    const Eigen::Vector3d dp = p.k_p * (d - p.d_p) * u;
    grads.eps_h[a][0] = -dh;
    grads.eps_h[a][1] = dh;
    grads.eps_p[a][0] = -dp;
    grads.eps_p[a][1] = dp;
    grads.mu_h[a][0] = -p.m_h * du;
    grads.mu_h[a][1] = p.m_h * du;
    grads.mu_p[a][0] = -p.m_p * du;
    grads.mu_p[a][1] = p.m_p * du;
    grads.mu_t[a][0] = -p.m_t * du;
    grads.mu_t[a][1] = p.m_t * du;
    for (int z = 0; z < natom; ++z)
      grads.r0[a][z] =
          (mono.atoms[z].mass / total_mass) * Eigen::Matrix3d::Identity();
  }
  return {std::move(props), std::move(grads)};
}

namespace {

double finite_number(const json& j, const std::string& where) {
  if (!j.is_number())
    throw ValidationError("tabulated file: field '" + where + "' is not a number");
  const double v = j.get<double>();
  if (!std::isfinite(v))
    throw ValidationError("tabulated file: field '" + where + "' is not finite");
  return v;
}

Eigen::Vector3d vec3_field(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3)
    throw ValidationError("tabulated file: field '" + where + "' is not a 3-vector");
  Eigen::Vector3d v;
  for (int i = 0; i < 3; ++i) v[i] = finite_number(j[i], where);
  return v;
}

Eigen::Matrix3d mat3_field(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 9)
    throw ValidationError("tabulated file: field '" + where +
                          "' is not a row-major 3x3 block");
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) m(i, k) = finite_number(j[3 * i + k], where);
  return m;
}

const json& require(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end())
    throw ValidationError("tabulated file: missing field '" + where + "." + key + "'");
  return *it;
}

}  // namespace

TabulatedSystem load_tabulated(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open tabulated file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("tabulated file parse error: " + std::string(e.what()));
  }

  TabulatedSystem sys;
  const json& monomers = require(doc, "monomers", "$");
  if (!monomers.is_array() || monomers.empty())
    throw ValidationError("tabulated file: field 'monomers' must be a non-empty array");
  const int n = static_cast<int>(monomers.size());

  sys.props.eps_h.resize(n);
  sys.props.eps_p.resize(n);
  sys.props.mu_h.resize(n);
  sys.props.mu_p.resize(n);
  sys.props.mu_t.resize(n);
  sys.props.r0.resize(n);
  sys.grads.eps_h.resize(n);
  sys.grads.eps_p.resize(n);
  sys.grads.mu_h.resize(n);
  sys.grads.mu_p.resize(n);
  sys.grads.mu_t.resize(n);
  sys.grads.r0.resize(n);
  sys.gradients_present = true;

  for (int a = 0; a < n; ++a) {
    const std::string tag = "monomers[" + std::to_string(a) + "]";
    const json& jm = monomers[a];
    Monomer mono;
    const json& atoms = require(jm, "atoms", tag);
    if (!atoms.is_array() || atoms.size() < 2)
      throw ValidationError("tabulated file: '" + tag + ".atoms' needs >= 2 entries");
    for (std::size_t z = 0; z < atoms.size(); ++z) {
      const std::string atag = tag + ".atoms[" + std::to_string(z) + "]";
      Atom atom;
      atom.xyz = vec3_field(require(atoms[z], "xyz", atag), atag + ".xyz");
      atom.mass = finite_number(require(atoms[z], "mass", atag), atag + ".mass");
      if (!(atom.mass > 0.0))
        throw ValidationError("tabulated file: '" + atag + ".mass' must be positive");
      mono.atoms.push_back(atom);
    }
    const int natom = static_cast<int>(mono.atoms.size());
    sys.geometry.monomers.push_back(std::move(mono));

    sys.props.eps_h[a] = finite_number(require(jm, "eps_h", tag), tag + ".eps_h");
    sys.props.eps_p[a] = finite_number(require(jm, "eps_p", tag), tag + ".eps_p");
    sys.props.mu_h[a] = vec3_field(require(jm, "mu_h", tag), tag + ".mu_h");
    sys.props.mu_p[a] = vec3_field(require(jm, "mu_p", tag), tag + ".mu_p");
    sys.props.mu_t[a] = vec3_field(require(jm, "mu_t", tag), tag + ".mu_t");

    // centroid is recomputed from the atoms (type invariant)
    double total_mass = 0.0;
    Eigen::Vector3d r0 = Eigen::Vector3d::Zero();
    for (const Atom& atom : sys.geometry.monomers[a].atoms) {
      total_mass += atom.mass;
      r0 += atom.mass * atom.xyz;
    }
    sys.props.r0[a] = r0 / total_mass;

    sys.grads.eps_h[a].assign(natom, Eigen::Vector3d::Zero());
    sys.grads.eps_p[a].assign(natom, Eigen::Vector3d::Zero());
    sys.grads.mu_h[a].assign(natom, Eigen::Matrix3d::Zero());
    sys.grads.mu_p[a].assign(natom, Eigen::Matrix3d::Zero());
    sys.grads.mu_t[a].assign(natom, Eigen::Matrix3d::Zero());
    sys.grads.r0[a].resize(natom);
    for (int z = 0; z < natom; ++z)
      sys.grads.r0[a][z] = (sys.geometry.monomers[a].atoms[z].mass / total_mass) *
                           Eigen::Matrix3d::Identity();

    auto grad_it = jm.find("grad");
    if (grad_it == jm.end()) {
      sys.gradients_present = false;
      continue;
    }
    const json& jg = *grad_it;
    auto load_vec_block = [&](const char* key,
                              std::vector<Eigen::Vector3d>& out) {
      auto it = jg.find(key);
      if (it == jg.end()) {
        sys.gradients_present = false;
        return;
      }
      if (!it->is_array() || static_cast<int>(it->size()) != natom)
        throw ValidationError("tabulated file: '" + tag + ".grad." + key +
                              "' must have one entry per atom");
      for (int z = 0; z < natom; ++z)
        out[z] = vec3_field((*it)[z], tag + ".grad." + key);
    };
    auto load_mat_block = [&](const char* key,
                              std::vector<Eigen::Matrix3d>& out) {
      auto it = jg.find(key);
      if (it == jg.end()) {
        sys.gradients_present = false;
        return;
      }
      if (!it->is_array() || static_cast<int>(it->size()) != natom)
        throw ValidationError("tabulated file: '" + tag + ".grad." + key +
                              "' must have one entry per atom");
      for (int z = 0; z < natom; ++z)
        out[z] = mat3_field((*it)[z], tag + ".grad." + key);
    };
    load_vec_block("eps_h", sys.grads.eps_h[a]);
    load_vec_block("eps_p", sys.grads.eps_p[a]);
    load_mat_block("mu_h", sys.grads.mu_h[a]);
    load_mat_block("mu_p", sys.grads.mu_p[a]);
    load_mat_block("mu_t", sys.grads.mu_t[a]);
  }
  sys.grads.complete = sys.gradients_present;

  const json& pairs = require(doc, "pairs", "$");
  if (!pairs.is_array())
    throw ValidationError("tabulated file: field 'pairs' must be an array");
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const json& jp = pairs[k];
    if (!jp.is_array() || jp.size() != 2 || !jp[0].is_number_integer() ||
        !jp[1].is_number_integer())
      throw ValidationError("tabulated file: 'pairs[" + std::to_string(k) +
                            "]' must be a pair of monomer indices");
    sys.pairs.emplace_back(jp[0].get<int>(), jp[1].get<int>());
  }
  validate_geometry(sys.geometry);
  return sys;
}

void save_tabulated(const std::string& path, const TabulatedSystem& sys) {
  json doc;
  doc["monomers"] = json::array();
  const int n = sys.geometry.num_monomers();
  for (int a = 0; a < n; ++a) {
    json jm;
    jm["atoms"] = json::array();
    for (const Atom& atom : sys.geometry.monomers[a].atoms) {
      json ja;
      ja["xyz"] = {atom.xyz[0], atom.xyz[1], atom.xyz[2]};
      ja["mass"] = atom.mass;
      jm["atoms"].push_back(ja);
    }
    jm["eps_h"] = sys.props.eps_h[a];
    jm["eps_p"] = sys.props.eps_p[a];
    auto vec3 = [](const Eigen::Vector3d& v) { return json{v[0], v[1], v[2]}; };
    jm["mu_h"] = vec3(sys.props.mu_h[a]);
    jm["mu_p"] = vec3(sys.props.mu_p[a]);
    jm["mu_t"] = vec3(sys.props.mu_t[a]);
    if (sys.gradients_present) {
      json jg;
      auto vec_block = [&](const std::vector<Eigen::Vector3d>& blocks) {
        json arr = json::array();
        for (const auto& b : blocks) arr.push_back(vec3(b));
        return arr;
      };
      auto mat_block = [&](const std::vector<Eigen::Matrix3d>& blocks) {
        json arr = json::array();
        for (const auto& m : blocks) {
          json flat = json::array();
          for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) flat.push_back(m(i, k));
          arr.push_back(flat);
        }
        return arr;
      };
      jg["eps_h"] = vec_block(sys.grads.eps_h[a]);
      jg["eps_p"] = vec_block(sys.grads.eps_p[a]);
      jg["mu_h"] = mat_block(sys.grads.mu_h[a]);
      jg["mu_p"] = mat_block(sys.grads.mu_p[a]);
      jg["mu_t"] = mat_block(sys.grads.mu_t[a]);
      jm["grad"] = jg;
    }
    doc["monomers"].push_back(jm);
  }
  doc["pairs"] = json::array();
  for (const auto& [a, b] : sys.pairs) doc["pairs"].push_back({a, b});

  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write tabulated file: " + path);
  out << doc.dump(2) << "\n";
}

}  // namespace mcvqe
