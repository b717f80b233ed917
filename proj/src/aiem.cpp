// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#include "mcvqe/aiem.hpp"

#include <cmath>
#include <string>

#include "mcvqe/errors.hpp"

namespace mcvqe {

PairList::PairList(int num_monomers, std::vector<std::pair<int, int>> ordered_pairs)
    : num_monomers_(num_monomers), pairs_(std::move(ordered_pairs)) {
  if (num_monomers < 1) throw ValidationError("PairList: need >= 1 monomer");
  index_ = Eigen::MatrixXi::Constant(num_monomers, num_monomers, -1);
  for (int k = 0; k < size(); ++k) {
    const auto [a, b] = pairs_[k];
    if (a < 0 || b < 0 || a >= num_monomers || b >= num_monomers)
      throw ValidationError("PairList: monomer index out of range");
    if (a == b)
      throw ValidationError("PairList: self pair (" + std::to_string(a) + "," +
                            std::to_string(b) + ") is not allowed");
    if (index_(a, b) != -1)
      throw ValidationError("PairList: duplicate pair");
    index_(a, b) = k;
  }
  for (const auto& [a, b] : pairs_)
    if (index_(b, a) == -1)
      throw ValidationError("PairList: pair list must contain both orderings");
}

PairList PairList::chain(int num_monomers) {
  std::vector<std::pair<int, int>> p;
  for (int a = 0; a + 1 < num_monomers; ++a) {
    p.emplace_back(a, a + 1);
    p.emplace_back(a + 1, a);
  }
  return PairList(num_monomers, std::move(p));
}

PauliCoeffs PauliCoeffs::zero(const PairList& pairs) {
  PauliCoeffs c;
  c.x = Eigen::VectorXd::Zero(pairs.num_monomers());
  c.z = Eigen::VectorXd::Zero(pairs.num_monomers());
  c.xx = Eigen::VectorXd::Zero(pairs.size());
  c.xz = Eigen::VectorXd::Zero(pairs.size());
  c.zx = Eigen::VectorXd::Zero(pairs.size());
  c.zz = Eigen::VectorXd::Zero(pairs.size());
  return c;
}

PauliCoeffs& PauliCoeffs::operator+=(const PauliCoeffs& o) {
  add_scaled(1.0, o);
  return *this;
}

PauliCoeffs& PauliCoeffs::operator-=(const PauliCoeffs& o) {
  add_scaled(-1.0, o);
  return *this;
}

PauliCoeffs& PauliCoeffs::operator*=(double s) {
  e *= s;
  x *= s;
  z *= s;
  xx *= s;
  xz *= s;
  zx *= s;
  zz *= s;
  return *this;
}

void PauliCoeffs::add_scaled(double s, const PauliCoeffs& o) {
  e += s * o.e;
  x += s * o.x;
  z += s * o.z;
  xx += s * o.xx;
  xz += s * o.xz;
  zx += s * o.zx;
  zz += s * o.zz;
}

double PauliCoeffs::max_abs() const {
  double m = std::abs(e);
  auto upd = [&m](const Eigen::VectorXd& v) {
    if (v.size()) m = std::max(m, v.cwiseAbs().maxCoeff());
  };
  upd(x);
  upd(z);
  upd(xx);
  upd(xz);
  upd(zx);
  upd(zz);
  return m;
}

Eigen::VectorXd PauliCoeffs::to_vector() const {
  const auto n = x.size(), p = xx.size();
  Eigen::VectorXd v(1 + 2 * n + 4 * p);
  v[0] = e;
  v.segment(1, n) = x;
  v.segment(1 + n, n) = z;
  v.segment(1 + 2 * n, p) = xx;
  v.segment(1 + 2 * n + p, p) = xz;
  v.segment(1 + 2 * n + 2 * p, p) = zx;
  v.segment(1 + 2 * n + 3 * p, p) = zz;
  return v;
}

PauliCoeffs PauliCoeffs::from_vector(const Eigen::VectorXd& v,
                                     const PairList& pairs) {
  const int n = pairs.num_monomers(), p = pairs.size();
  if (v.size() != 1 + 2 * n + 4 * p)
    throw ValidationError("PauliCoeffs: flat vector size mismatch");
  PauliCoeffs c = zero(pairs);
  c.e = v[0];
  c.x = v.segment(1, n);
  c.z = v.segment(1 + n, n);
  c.xx = v.segment(1 + 2 * n, p);
  c.xz = v.segment(1 + 2 * n + p, p);
  c.zx = v.segment(1 + 2 * n + 2 * p, p);
  c.zz = v.segment(1 + 2 * n + 3 * p, p);
  return c;
}

MonomerCoeffs MonomerCoeffs::zero(const PairList& pairs) {
  MonomerCoeffs m;
  m.eps_h = Eigen::VectorXd::Zero(pairs.num_monomers());
  m.eps_p = Eigen::VectorXd::Zero(pairs.num_monomers());
  m.eps_t = Eigen::VectorXd::Zero(pairs.num_monomers());
  m.v.assign(pairs.size(), Eigen::Matrix3d::Zero());
  return m;
}

Eigen::VectorXd MonomerCoeffs::to_vector() const {
  const auto n = eps_h.size();
  const auto p = static_cast<Eigen::Index>(v.size());
  Eigen::VectorXd out(3 * n + 9 * p);
  out.segment(0, n) = eps_h;
  out.segment(n, n) = eps_p;
  out.segment(2 * n, n) = eps_t;
  for (Eigen::Index k = 0; k < p; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out[3 * n + 9 * k + 3 * i + j] = v[k](i, j);
  return out;
}

MonomerCoeffs MonomerCoeffs::from_vector(const Eigen::VectorXd& in,
                                         const PairList& pairs) {
  const int n = pairs.num_monomers(), p = pairs.size();
  if (in.size() != 3 * n + 9 * p)
    throw ValidationError("MonomerCoeffs: flat vector size mismatch");
  MonomerCoeffs m = zero(pairs);
  m.eps_h = in.segment(0, n);
  m.eps_p = in.segment(n, n);
  m.eps_t = in.segment(2 * n, n);
  for (int k = 0; k < p; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m.v[k](i, j) = in[3 * n + 9 * k + 3 * i + j];
  return m;
}

double dipole_coupling(const Eigen::Vector3d& mu_a, const Eigen::Vector3d& mu_b,
                       const Eigen::Vector3d& r0_a, const Eigen::Vector3d& r0_b) {
  const Eigen::Vector3d r = r0_b - r0_a;
  const double rn = r.norm();
  if (rn < 1e-6)
    throw ValidationError("dipole_coupling: centroids nearly coincide");
  const double r3 = rn * rn * rn;
  const double r5 = r3 * rn * rn;
  return mu_a.dot(mu_b) / r3 - 3.0 * mu_a.dot(r) * mu_b.dot(r) / r5;
}

CouplingPartials coupling_partials(const Eigen::Vector3d& mu_a,
                                   const Eigen::Vector3d& mu_b,
                                   const Eigen::Vector3d& r0_a,
                                   const Eigen::Vector3d& r0_b) {
  const Eigen::Vector3d r = r0_b - r0_a;
  const double rn = r.norm();
  if (rn < 1e-6)
    throw ValidationError("coupling_partials: centroids nearly coincide");
  const double r3 = rn * rn * rn;
  const double r5 = r3 * rn * rn;
  const double r7 = r5 * rn * rn;
  CouplingPartials out;
  out.mu_a = mu_b / r3 - 3.0 * mu_b.dot(r) * r / r5;
  out.mu_b = mu_a / r3 - 3.0 * mu_a.dot(r) * r / r5;
  // dv/dr with r = r0_b - r0_a; centroid partials carry the +-1 chain signs.
  const Eigen::Vector3d dv_dr = -3.0 * mu_a.dot(mu_b) * r / r5 +
                                15.0 * mu_a.dot(r) * mu_b.dot(r) * r / r7 -
                                3.0 * mu_b.dot(r) * mu_a / r5 -
                                3.0 * mu_a.dot(r) * mu_b / r5;
  out.r0_b = dv_dr;
  out.r0_a = -dv_dr;
  return out;
}

DimerCouplings build_couplings(const MonomerProperties& props,
                               const PairList& pairs) {
  if (props.num_monomers() != pairs.num_monomers())
    throw ValidationError("build_couplings: monomer count mismatch");
  DimerCouplings c;
  c.v.resize(pairs.size());
  for (int k = 0; k < pairs.size(); ++k) {
    const auto [a, b] = pairs.pairs()[k];
    const Eigen::Vector3d* mu_a[3] = {&props.mu_h[a], &props.mu_t[a], &props.mu_p[a]};
    const Eigen::Vector3d* mu_b[3] = {&props.mu_h[b], &props.mu_t[b], &props.mu_p[b]};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        c.v[k](i, j) = dipole_coupling(*mu_a[i], *mu_b[j], props.r0[a], props.r0[b]);
  }
  return c;
}

MonomerCoeffs monomer_elements(const MonomerProperties& props,
                               const DimerCouplings& couplings,
                               const PairList& pairs) {
  MonomerCoeffs m = MonomerCoeffs::zero(pairs);
  m.eps_h = props.eps_h;
  m.eps_p = props.eps_p;
  m.v = couplings.v;
  return m;
}

namespace {

// One term of the linear monomer->Pauli map: pauli_flat[row] += w *
// monomer_flat[col]. Enumerated once per pair list; monomer_to_pauli walks it
// forward and pauli_to_monomer_dm walks the transpose, so the two are exact
// adjoints by construction.
struct MapTerm {
  int row, col;
  double w;
};

std::vector<MapTerm> aiem_map_terms(const PairList& pairs) {
  const int n = pairs.num_monomers();
  const int np = pairs.size();
  std::vector<MapTerm> t;
  t.reserve(6 * n + 24 * np);
  // pauli flat layout: e=0, x=1..n, z=1+n..2n, then xx,xz,zx,zz blocks
  auto row_x = [n](int a) { return 1 + a; };
  auto row_z = [n](int a) { return 1 + n + a; };
  auto row_xx = [n](int k) { return 1 + 2 * n + k; };
  // monomer flat layout: eps_h=0..n, eps_p=n..2n, eps_t=2n..3n, v blocks
  auto col_h = [](int a) { return a; };
  auto col_p = [n](int a) { return n + a; };
  auto col_t = [n](int a) { return 2 * n + a; };
  auto col_v = [n](int k, int i, int j) { return 3 * n + 9 * k + 3 * i + j; };

  for (int a = 0; a < n; ++a) {
    t.push_back({0, col_h(a), 0.5});        // E <- eps_s
    t.push_back({0, col_p(a), 0.5});
    t.push_back({row_z(a), col_h(a), 0.5}); // Z <- eps_d
    t.push_back({row_z(a), col_p(a), -0.5});
    t.push_back({row_x(a), col_t(a), 1.0}); // X <- eps_t (formally zero)
  }
  for (int k = 0; k < np; ++k) {
    const auto [a, b] = pairs.pairs()[k];
    // E += 1/2 * v_ss = (v_hh + v_hp + v_ph + v_pp)/8
    for (int i : {kHole, kParticle})
      for (int j : {kHole, kParticle}) t.push_back({0, col_v(k, i, j), 0.125});
    // Z_a += 1/2 * v_ds; Z_b += 1/2 * v_sd
    t.push_back({row_z(a), col_v(k, kHole, kHole), 0.125});
    t.push_back({row_z(a), col_v(k, kHole, kParticle), 0.125});
    t.push_back({row_z(a), col_v(k, kParticle, kHole), -0.125});
    t.push_back({row_z(a), col_v(k, kParticle, kParticle), -0.125});
    t.push_back({row_z(b), col_v(k, kHole, kHole), 0.125});
    t.push_back({row_z(b), col_v(k, kParticle, kHole), 0.125});
    t.push_back({row_z(b), col_v(k, kHole, kParticle), -0.125});
    t.push_back({row_z(b), col_v(k, kParticle, kParticle), -0.125});
    // X_a += 1/2 * v_ts; X_b += 1/2 * v_st
    t.push_back({row_x(a), col_v(k, kTransition, kHole), 0.25});
    t.push_back({row_x(a), col_v(k, kTransition, kParticle), 0.25});
    t.push_back({row_x(b), col_v(k, kHole, kTransition), 0.25});
    t.push_back({row_x(b), col_v(k, kParticle, kTransition), 0.25});
    // two-body channels
    t.push_back({row_xx(k), col_v(k, kTransition, kTransition), 1.0});
    t.push_back({row_xx(k) + np, col_v(k, kTransition, kHole), 0.5});       // XZ
    t.push_back({row_xx(k) + np, col_v(k, kTransition, kParticle), -0.5});
    t.push_back({row_xx(k) + 2 * np, col_v(k, kHole, kTransition), 0.5});   // ZX
    t.push_back({row_xx(k) + 2 * np, col_v(k, kParticle, kTransition), -0.5});
    t.push_back({row_xx(k) + 3 * np, col_v(k, kHole, kHole), 0.25});        // ZZ
    t.push_back({row_xx(k) + 3 * np, col_v(k, kHole, kParticle), -0.25});
    t.push_back({row_xx(k) + 3 * np, col_v(k, kParticle, kHole), -0.25});
    t.push_back({row_xx(k) + 3 * np, col_v(k, kParticle, kParticle), 0.25});
  }
  return t;
}

}  // namespace

PauliCoeffs monomer_to_pauli(const MonomerCoeffs& m, const PairList& pairs) {
  const Eigen::VectorXd mv = m.to_vector();
  Eigen::VectorXd pv =
      Eigen::VectorXd::Zero(1 + 2 * pairs.num_monomers() + 4 * pairs.size());
  for (const MapTerm& t : aiem_map_terms(pairs)) pv[t.row] += t.w * mv[t.col];
  return PauliCoeffs::from_vector(pv, pairs);
}

MonomerCoeffs pauli_to_monomer_dm(const PauliCoeffs& density,
                                  const PairList& pairs) {
  // Stored pair densities are expectation values; the 1/2 of the pair
  // pairing turns them into the plain covector before the transpose, and the
  // outgoing v-slot densities double back to the symmetric-bump (physical
  // degree of freedom) convention. One-body slots are not duplicated and
  // carry no scaling.
  PauliCoeffs raw = density;
  raw.xx *= 0.5;
  raw.xz *= 0.5;
  raw.zx *= 0.5;
  raw.zz *= 0.5;
  const Eigen::VectorXd pv = raw.to_vector();
  Eigen::VectorXd mv =
      Eigen::VectorXd::Zero(3 * pairs.num_monomers() + 9 * pairs.size());
  for (const MapTerm& t : aiem_map_terms(pairs)) mv[t.col] += t.w * pv[t.row];
  MonomerCoeffs out = MonomerCoeffs::from_vector(mv, pairs);
  for (Eigen::Matrix3d& block : out.v) block *= 2.0;
  return out;
}

double energy_pairing(const PauliCoeffs& a, const PauliCoeffs& b) {
  return a.e * b.e + a.x.dot(b.x) + a.z.dot(b.z) +
         0.5 * (a.xx.dot(b.xx) + a.xz.dot(b.xz) + a.zx.dot(b.zx) +
                a.zz.dot(b.zz));
}

double energy_pairing(const MonomerCoeffs& a, const MonomerCoeffs& b) {
  double acc = a.eps_h.dot(b.eps_h) + a.eps_p.dot(b.eps_p) + a.eps_t.dot(b.eps_t);
  for (std::size_t k = 0; k < a.v.size(); ++k)
    acc += 0.5 * a.v[k].cwiseProduct(b.v[k]).sum();
  return acc;
}

PauliCoeffs build_pauli(const MonomerProperties& props,
                        const DimerCouplings& couplings, const PairList& pairs) {
  return monomer_to_pauli(monomer_elements(props, couplings, pairs), pairs);
}

Eigen::MatrixXd build_cis(const PauliCoeffs& h, const PairList& pairs) {
  const int n = pairs.num_monomers();
  Eigen::MatrixXd cis = Eigen::MatrixXd::Zero(n + 1, n + 1);
  const double e_ref = h.e + h.z.sum() + 0.5 * h.zz.sum();
  cis(0, 0) = e_ref;
  for (int a = 0; a < n; ++a) {
    cis(a + 1, a + 1) = e_ref - 2.0 * h.z[a];
    cis(0, a + 1) = h.x[a];
  }
  for (int k = 0; k < pairs.size(); ++k) {
    const auto [a, b] = pairs.pairs()[k];
    cis(a + 1, a + 1) -= h.zz[k];
    cis(b + 1, b + 1) -= h.zz[k];
    cis(0, a + 1) += 0.5 * h.xz[k];
    cis(0, b + 1) += 0.5 * h.zx[k];
    cis(a + 1, b + 1) = h.xx[k];
  }
  for (int a = 0; a < n; ++a) cis(a + 1, 0) = cis(0, a + 1);
  return cis;
}

PauliCoeffs cis_hamiltonian_adjoint(const Eigen::MatrixXd& d,
                                    const PairList& pairs) {
  const int n = pairs.num_monomers();
  if (d.rows() != n + 1 || d.cols() != n + 1)
    throw ValidationError("cis_hamiltonian_adjoint: D must be (N+1)x(N+1)");
  const Eigen::MatrixXd ds = 0.5 * (d + d.transpose());
  const double tr = ds.trace();
  PauliCoeffs out = PauliCoeffs::zero(pairs);
  out.e = tr;
  for (int a = 0; a < n; ++a) {
    out.z[a] = tr - 2.0 * ds(a + 1, a + 1);
    out.x[a] = 2.0 * ds(0, a + 1);
  }
  for (int k = 0; k < pairs.size(); ++k) {
    const auto [a, b] = pairs.pairs()[k];
    out.zz[k] = tr - 2.0 * ds(a + 1, a + 1) - 2.0 * ds(b + 1, b + 1);
    out.xx[k] = 2.0 * ds(a + 1, b + 1);
    out.xz[k] = 2.0 * ds(0, a + 1);
    out.zx[k] = 2.0 * ds(0, b + 1);
  }
  return out;
}

std::vector<PauliString> pauli_basis(const PairList& pairs) {
  const int n = pairs.num_monomers();
  std::vector<PauliString> ops;
  ops.reserve(2 * n + 4 * pairs.size());
  for (int a = 0; a < n; ++a) ops.emplace_back(a, PauliAxis::X);
  for (int a = 0; a < n; ++a) ops.emplace_back(a, PauliAxis::Z);
  for (const auto& [a, b] : pairs.pairs()) {
    ops.emplace_back(a, PauliAxis::X, b, PauliAxis::X);
    ops.emplace_back(a, PauliAxis::X, b, PauliAxis::Z);
    ops.emplace_back(a, PauliAxis::Z, b, PauliAxis::X);
    ops.emplace_back(a, PauliAxis::Z, b, PauliAxis::Z);
  }
  return ops;
}

Observable to_observable(const PauliCoeffs& h, const PairList& pairs) {
  Observable obs;
  obs.constant = h.e;
  const int n = pairs.num_monomers();
  for (int a = 0; a < n; ++a) {
    obs.terms.emplace_back(PauliString(a, PauliAxis::X), h.x[a]);
    obs.terms.emplace_back(PauliString(a, PauliAxis::Z), h.z[a]);
  }
  for (int k = 0; k < pairs.size(); ++k) {
    const auto [a, b] = pairs.pairs()[k];
    obs.terms.emplace_back(PauliString(a, PauliAxis::X, b, PauliAxis::X), 0.5 * h.xx[k]);
    obs.terms.emplace_back(PauliString(a, PauliAxis::X, b, PauliAxis::Z), 0.5 * h.xz[k]);
    obs.terms.emplace_back(PauliString(a, PauliAxis::Z, b, PauliAxis::X), 0.5 * h.zx[k]);
    obs.terms.emplace_back(PauliString(a, PauliAxis::Z, b, PauliAxis::Z), 0.5 * h.zz[k]);
  }
  return obs;
}

PauliCoeffs coeffs_from_measurements(const std::vector<double>& values,
                                     const PairList& pairs) {
  const int n = pairs.num_monomers();
  if (static_cast<int>(values.size()) != 2 * n + 4 * pairs.size())
    throw ValidationError("coeffs_from_measurements: size mismatch");
  PauliCoeffs c = PauliCoeffs::zero(pairs);
  c.e = 1.0;
  for (int a = 0; a < n; ++a) {
    c.x[a] = values[a];
    c.z[a] = values[n + a];
  }
  for (int k = 0; k < pairs.size(); ++k) {
    c.xx[k] = values[2 * n + 4 * k];
    c.xz[k] = values[2 * n + 4 * k + 1];
    c.zx[k] = values[2 * n + 4 * k + 2];
    c.zz[k] = values[2 * n + 4 * k + 3];
  }
  return c;
}

std::vector<PauliSlot> enumerate_pauli_slots(const PairList& pairs) {
  std::vector<PauliSlot> slots;
  slots.push_back({PauliSlot::E, -1, -1});
  for (int a = 0; a < pairs.num_monomers(); ++a)
    slots.push_back({PauliSlot::X, a, -1});
  for (int a = 0; a < pairs.num_monomers(); ++a)
    slots.push_back({PauliSlot::Z, a, -1});
  for (int k = 0; k < pairs.size(); ++k) {
    slots.push_back({PauliSlot::XX, -1, k});
    slots.push_back({PauliSlot::XZ, -1, k});
    slots.push_back({PauliSlot::ZX, -1, k});
    slots.push_back({PauliSlot::ZZ, -1, k});
  }
  return slots;
}

PauliCoeffs slot_direction(const PauliSlot& slot, const PairList& pairs) {
  PauliCoeffs dir = PauliCoeffs::zero(pairs);
  switch (slot.kind) {
    case PauliSlot::E:
      dir.e = 1.0;
      return dir;
    case PauliSlot::X:
      dir.x[slot.monomer] = 1.0;
      return dir;
    case PauliSlot::Z:
      dir.z[slot.monomer] = 1.0;
      return dir;
    default:
      break;
  }
  const auto [a, b] = pairs.pairs()[slot.pair];
  const int mirror = pairs.index(b, a);
  switch (slot.kind) {
    case PauliSlot::XX:
      dir.xx[slot.pair] = 1.0;
      dir.xx[mirror] = 1.0;
      break;
    case PauliSlot::ZZ:
      dir.zz[slot.pair] = 1.0;
      dir.zz[mirror] = 1.0;
      break;
    case PauliSlot::XZ:
      dir.xz[slot.pair] = 1.0;
      dir.zx[mirror] = 1.0;
      break;
    case PauliSlot::ZX:
      dir.zx[slot.pair] = 1.0;
      dir.xz[mirror] = 1.0;
      break;
    default:
      break;
  }
  return dir;
}

double slot_value(const PauliCoeffs& c, const PauliSlot& slot) {
  switch (slot.kind) {
    case PauliSlot::E:
      return c.e;
    case PauliSlot::X:
      return c.x[slot.monomer];
    case PauliSlot::Z:
      return c.z[slot.monomer];
    case PauliSlot::XX:
      return c.xx[slot.pair];
    case PauliSlot::XZ:
      return c.xz[slot.pair];
    case PauliSlot::ZX:
      return c.zx[slot.pair];
    case PauliSlot::ZZ:
      return c.zz[slot.pair];
  }
  return 0.0;
}

}  // namespace mcvqe
