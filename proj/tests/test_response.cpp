// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#include "mcvqe/response.hpp"

#include <random>

#include <doctest.h>

#include "mcvqe/errors.hpp"
#include "mcvqe/oracle.hpp"
#include "support.hpp"

using namespace mcvqe;
using mcvqe::testing::dimer_fixture;

namespace {

struct Setup {
  PauliCoeffs h;
  PairList pairs;
  CisStates cis;
};

Setup setup_for(const System& sys) {
  Setup s;
  s.pairs = sys.pairs;
  s.h = build_pauli(sys.props, build_couplings(sys.props, sys.pairs), sys.pairs);
  s.cis = solve_cis(build_cis(s.h, s.pairs));
  return s;
}

PauliCoeffs random_direction(std::mt19937_64& rng, const PairList& pairs) {
  std::normal_distribution<double> gauss;
  PauliCoeffs dir = PauliCoeffs::zero(pairs);
  Eigen::VectorXd v = dir.to_vector();
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = gauss(rng);
  dir = PauliCoeffs::from_vector(v, pairs);
  dir.e = 0.0;
  // keep the direction a physical (symmetry-respecting) perturbation
  for (int k = 0; k < pairs.size(); ++k) {
    const auto [a, b] = pairs.pairs()[k];
    const int m = pairs.index(b, a);
    if (m < k) continue;
    dir.xx[m] = dir.xx[k];
    dir.zz[m] = dir.zz[k];
    dir.zx[m] = dir.xz[k];
    dir.xz[m] = dir.zx[k];
  }
  return dir;
}

}  // namespace

TEST_CASE("unrelaxed densities: single-monomer ground state has gamma_Z = 1") {
  PairList pairs(1, {});
  MonomerProperties props;
  props.eps_h.resize(1);
  props.eps_p.resize(1);
  // offset keeps both CIS energies away from the CP-CIS zero-energy
  // singularity
  props.eps_h[0] = 0.2;
  props.eps_p[0] = 1.2;
  props.mu_h = {Eigen::Vector3d::Zero()};
  props.mu_p = {Eigen::Vector3d::Zero()};
  props.mu_t = {Eigen::Vector3d::Zero()};
  props.r0 = {Eigen::Vector3d::Zero()};
  const PauliCoeffs h = build_pauli(props, DimerCouplings{}, pairs);
  const CisStates cis = solve_cis(build_cis(h, pairs));
  McVqe engine(h, pairs, cis, {EntanglerLayout::Kind::Truncated, 1},
               {.num_states = 2});
  const McVqeSolution sol = engine.solve();
  const PauliCoeffs dens = unrelaxed_densities(engine, sol, 0);
  CHECK(dens.e == 1.0);
  CHECK(dens.z[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sol.energies[0] == doctest::Approx(0.2).epsilon(1e-12));

  // full space + exact ansatz: the response vanishes identically
  const StateDensities full = relaxed_densities(engine, sol, 0, {true, true});
  PauliCoeffs diff = full.relaxed;
  diff -= full.unrelaxed;
  CHECK(diff.max_abs() < 1e-9);
}

TEST_CASE("unrelaxed densities equal dense statevector expectations") {
  const Setup s = setup_for(dimer_fixture());
  McVqe engine(s.h, s.pairs, s.cis, {EntanglerLayout::Kind::Truncated, 1},
               {.num_states = 2});
  const McVqeSolution sol = engine.solve();
  const PauliCoeffs dens = unrelaxed_densities(engine, sol, 1);

  const Statevector psi =
      engine.configured(sol.theta, angles_from_coefficients(sol.generating.col(1)))
          .run();
  const auto basis = pauli_basis(s.pairs);
  std::vector<double> values(basis.size());
  expectations(psi, basis, values);
  const PauliCoeffs expect = coeffs_from_measurements(values, s.pairs);
  PauliCoeffs diff = dens;
  diff -= expect;
  CHECK(diff.max_abs() < 1e-12);
  CHECK(dens.max_abs() <= 1.0 + 1e-12);
}

TEST_CASE("subspace-eigenstate response residual") {
  const Setup s = setup_for(dimer_fixture());
  McVqe engine(s.h, s.pairs, s.cis, {EntanglerLayout::Kind::Truncated, 1},
               {.num_states = 2});
  const McVqeSolution sol = engine.solve();
  for (int th = 0; th < 2; ++th) CHECK(se_response(sol, th) <= 1e-10);

  // exactly diagonal subspace: residual is exactly zero
  McVqeSolution diag;
  diag.subspace_h = Eigen::MatrixXd::Zero(2, 2);
  diag.subspace_h(0, 0) = 0.1;
  diag.subspace_h(1, 1) = 0.4;
  std::tie(diag.eigenvectors, diag.energies) =
      McVqe::diagonalize_subspace(diag.subspace_h);
  CHECK(se_response(diag, 0) == 0.0);

  // randomized 3-state subspace
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd m =
      Eigen::MatrixXd::NullaryExpr(3, 3, [&]() { return gauss(rng); });
  McVqeSolution rnd;
  rnd.subspace_h = 0.5 * (m + m.transpose());
  std::tie(rnd.eigenvectors, rnd.energies) =
      McVqe::diagonalize_subspace(rnd.subspace_h);
  for (int th = 0; th < 3; ++th) CHECK(se_response(rnd, th) <= 1e-12);
}

TEST_CASE("cp-sa-vqe right-hand side") {
  const Setup s = setup_for(dimer_fixture());
  McVqe engine(s.h, s.pairs, s.cis, {EntanglerLayout::Kind::Truncated, 1},
               {.num_states = 2});
  const McVqeSolution sol = engine.solve();
  const Eigen::VectorXd g = cp_sa_vqe_rhs(engine, sol, 1);
  // the truncated ansatz is deliberately inflexible: response is large
  CHECK(g.norm() > 1e-3);

  // finite-difference oracle over each entangler angle of eps[theta, Gamma]
  const CisAngles gamma_angles =
      angles_from_coefficients(sol.generating.col(1));
  const double h = 1e-6;
  for (int k = 0; k < 2; ++k) {
    Eigen::VectorXd tp = sol.theta, tm = sol.theta;
    tp[k] += h;
    tm[k] -= h;
    const double fd = (engine.energy_epsilon(tp, gamma_angles) -
                       engine.energy_epsilon(tm, gamma_angles)) /
                      (2 * h);
    CHECK(std::abs(fd - g[k]) < 1e-8);
  }
}

TEST_CASE("cp-sa-vqe left-hand side is symmetric and positive at the minimum") {
  const Setup s = setup_for(dimer_fixture());
  McVqe engine(s.h, s.pairs, s.cis, {EntanglerLayout::Kind::Truncated, 1},
               {.num_states = 2});
  const McVqeSolution sol = engine.solve();
  // the two stencil orders agree before any symmetrization
  const Circuit c0 = engine.configured(sol.theta, engine.state_angles(0));
  CHECK(shift_hessian(c0, engine.observable(), engine.vqe_parameter_id(0),
                      engine.vqe_parameter_id(1)) ==
        doctest::Approx(shift_hessian(c0, engine.observable(),
                                      engine.vqe_parameter_id(1),
                                      engine.vqe_parameter_id(0)))
            .epsilon(1e-10));
  const Eigen::MatrixXd h = cp_sa_vqe_lhs(engine, sol);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  CHECK(es.eigenvalues().minCoeff() >= -1e-8);
}

TEST_CASE("cp-sa-vqe solve") {
  // G = 0 -> zero multipliers
  Eigen::MatrixXd h(1, 1);
  h(0, 0) = 2.0;
  CHECK(solve_cp_sa_vqe(h, Eigen::VectorXd::Zero(1), 1e-8).cwiseAbs().maxCoeff() ==
        0.0);
  // 1x1: 2 t = 4 -> t = 2
  Eigen::VectorXd g(1);
  g << -4.0;
  CHECK(solve_cp_sa_vqe(h, g, 1e-8)[0] == doctest::Approx(2.0).epsilon(1e-14));

  // random SPD solve against the explicit inverse
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  const Eigen::MatrixXd a =
      Eigen::MatrixXd::NullaryExpr(5, 5, [&]() { return gauss(rng); });
  const Eigen::MatrixXd spd =
      a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(5, 5);
  Eigen::VectorXd rhs(5);
  for (int i = 0; i < 5; ++i) rhs[i] = gauss(rng);
  bool regularized = true;
  const Eigen::VectorXd sol = solve_cp_sa_vqe(spd, rhs, 1e-8, &regularized);
  CHECK_FALSE(regularized);
  CHECK((sol - spd.inverse() * (-rhs)).cwiseAbs().maxCoeff() < 1e-10);

  // a flat direction triggers the Tikhonov floor
  Eigen::MatrixXd flat = Eigen::MatrixXd::Zero(2, 2);
  flat(0, 0) = 1.0;
  solve_cp_sa_vqe(flat, Eigen::VectorXd::Zero(2), 1e-8, &regularized);
  CHECK(regularized);
}

TEST_CASE("vqe response density: zero multipliers and directional FD") {
  const Setup s = setup_for(dimer_fixture());
  McVqe engine(s.h, s.pairs, s.cis, {EntanglerLayout::Kind::Truncated, 1},
               {.num_states = 2});
  const McVqeSolution sol = engine.solve();

  CHECK(vqe_response_density(engine, sol, Eigen::VectorXd::Zero(2)).max_abs() ==
        0.0);

  const Eigen::VectorXd g = cp_sa_vqe_rhs(engine, sol, 1);
  const Eigen::MatrixXd hess = cp_sa_vqe_lhs(engine, sol);
  const Eigen::VectorXd tilde = solve_cp_sa_vqe(hess, g, 1e-8);
  const PauliCoeffs gamma = vqe_response_density(engine, sol, tilde);
  CHECK(gamma.max_abs() > 1e-3);  // large by construction for this fixture

  // directional check: <delta, gamma_vqe> = sum_g tilde_g d/dh dEbar/dtheta_g
  // at fixed theta* and fixed CIS states
  std::mt19937_64 rng(13);
  const PauliCoeffs delta = random_direction(rng, s.pairs);
  const double lhs = energy_pairing(delta, gamma);
  const double h = 1e-6;
  auto sa_grad_dot_tilde = [&](double d) {
    PauliCoeffs hp = s.h;
    hp.add_scaled(d, delta);
    McVqe pert(hp, s.pairs, s.cis, {EntanglerLayout::Kind::Truncated, 1},
               {.num_states = 2});
    return tilde.dot(pert.sa_energy_and_gradient(sol.theta).second);
  };
  const double rhs = (sa_grad_dot_tilde(h) - sa_grad_dot_tilde(-h)) / (2 * h);
  CHECK(std::abs(lhs - rhs) < 1e-8);
}

TEST_CASE("cp-cis blocks: spectral identities") {
  const Setup s = setup_for(dimer_fixture());
  const Eigen::MatrixXd h_cis = build_cis(s.h, s.pairs);
  const auto blocks = cp_cis_lhs(h_cis, s.cis, 2);
  for (int xi = 0; xi < 2; ++xi) {
    CHECK((blocks[xi] - blocks[xi].transpose()).cwiseAbs().maxCoeff() < 1e-15);
    const Eigen::VectorXd c = s.cis.c.col(xi);
    CHECK((blocks[xi] * c + 2.0 * s.cis.energies[xi] * c).cwiseAbs().maxCoeff() <
          1e-12);
    for (int other = 0; other < 3; ++other) {
      if (other == xi) continue;
      const Eigen::VectorXd co = s.cis.c.col(other);
      CHECK((blocks[xi] * co -
             (s.cis.energies[other] - s.cis.energies[xi]) * co)
                .cwiseAbs()
                .maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("cp-cis solve") {
  const Setup s = setup_for(dimer_fixture());
  const Eigen::MatrixXd h_cis = build_cis(s.h, s.pairs);

  // zero right-hand side
  CHECK(solve_cp_cis(h_cis, s.cis, 2, Eigen::MatrixXd::Zero(3, 2))
            .cwiseAbs()
            .maxCoeff() == 0.0);

  // rhs along C_Xi inverts through the -2E eigendirection
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(3, 2);
  rhs.col(0) = 0.7 * s.cis.c.col(0);
  const Eigen::MatrixXd tilde = solve_cp_cis(h_cis, s.cis, 2, rhs);
  CHECK((tilde.col(0) - 0.7 / (2.0 * s.cis.energies[0]) * s.cis.c.col(0))
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  // random rhs: residual certificate
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss;
  const Eigen::MatrixXd random_rhs =
      Eigen::MatrixXd::NullaryExpr(3, 2, [&]() { return gauss(rng); });
  const Eigen::MatrixXd sol = solve_cp_cis(h_cis, s.cis, 2, random_rhs);
  const auto blocks = cp_cis_lhs(h_cis, s.cis, 2);
  for (int xi = 0; xi < 2; ++xi)
    CHECK((blocks[xi] * sol.col(xi) + random_rhs.col(xi)).norm() < 1e-10);

  // degenerate CIS states are rejected with the pair named
  CisStates degenerate = s.cis;
  degenerate.energies[1] = degenerate.energies[0];
  try {
    solve_cp_cis(h_cis, degenerate, 2, random_rhs);
    CHECK(false);
  } catch (const ConvergenceError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("degenerate") != std::string::npos);
    CHECK(msg.find("0") != std::string::npos);
    CHECK(msg.find("1") != std::string::npos);
  }
}

TEST_CASE("crs response density: zero multipliers and directional FD") {
  const Setup s = setup_for(dimer_fixture());
  McVqe engine(s.h, s.pairs, s.cis, {EntanglerLayout::Kind::Truncated, 1},
               {.num_states = 2});
  const McVqeSolution sol = engine.solve();

  CHECK(crs_response_density(Eigen::MatrixXd::Zero(3, 2), s.cis, 2, s.pairs)
            .max_abs() == 0.0);

  const StateDensities dens = relaxed_densities(engine, sol, 1, {true, true});
  const Eigen::MatrixXd& tilde = dens.crs_multipliers;

  // <delta, gamma_crs> = sum_{I Xi} tilde d/dh R_{I Xi}(H + h delta) at
  // fixed CIS coefficients
  std::mt19937_64 rng(19);
  const PauliCoeffs delta = random_direction(rng, s.pairs);
  const double lhs = energy_pairing(delta, dens.crs_response);
  auto residual_dot = [&](double d) {
    PauliCoeffs hp = s.h;
    hp.add_scaled(d, delta);
    const Eigen::MatrixXd h_cis = build_cis(hp, s.pairs);
    double acc = 0.0;
    for (int xi = 0; xi < 2; ++xi) {
      const Eigen::VectorXd c = s.cis.c.col(xi);
      const double e_xi = c.dot(h_cis * c);
      acc += tilde.col(xi).dot(h_cis * c - e_xi * c);
    }
    return acc;
  };
  const double h = 1e-6;
  const double rhs = (residual_dot(h) - residual_dot(-h)) / (2 * h);
  CHECK(std::abs(lhs - rhs) < 1e-8);
}

TEST_CASE("assemble_relaxed obeys the toggle matrix") {
  const PairList pairs = PairList::chain(2);
  PauliCoeffs u = PauliCoeffs::zero(pairs), v = PauliCoeffs::zero(pairs),
              c = PauliCoeffs::zero(pairs);
  u.e = 1.0;
  u.z[0] = 0.5;
  v.z[0] = 0.25;
  c.z[0] = -0.125;
  CHECK(assemble_relaxed(u, v, c, {false, false}).z[0] == 0.5);
  CHECK(assemble_relaxed(u, v, c, {true, false}).z[0] == 0.75);
  CHECK(assemble_relaxed(u, v, c, {false, true}).z[0] == 0.375);
  CHECK(assemble_relaxed(u, v, c, {true, true}).z[0] == 0.625);
  // zero responses leave the unrelaxed densities
  const PauliCoeffs zero = PauliCoeffs::zero(pairs);
  PauliCoeffs same = assemble_relaxed(u, zero, zero, {true, true});
  same -= u;
  CHECK(same.max_abs() == 0.0);
}

TEST_CASE("cp-cis rhs decomposition: without multipliers only term 1 remains") {
  const Setup s = setup_for(dimer_fixture());
  McVqe engine(s.h, s.pairs, s.cis, {EntanglerLayout::Kind::Truncated, 1},
               {.num_states = 2});
  const McVqeSolution sol = engine.solve();
  const Eigen::MatrixXd rhs1 = cp_cis_rhs(engine, sol, 1, nullptr);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
  const Eigen::MatrixXd rhs_zero_tilde = cp_cis_rhs(engine, sol, 1, &zero);
  CHECK((rhs1 - rhs_zero_tilde).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("identity entangler + full subspace reproduces the CIS oracle") {
  const Setup s = setup_for(dimer_fixture());
  McVqe engine(s.h, s.pairs, s.cis, {EntanglerLayout::Kind::Identity, 1},
               {.num_states = 3});
  const McVqeSolution sol = engine.solve();
  for (int th = 0; th < 3; ++th) {
    const StateDensities dens = relaxed_densities(engine, sol, th, {true, true});
    PauliCoeffs diff = dens.relaxed;
    diff -= cis_densities(s.cis, th, s.pairs);
    CHECK(diff.max_abs() < 1e-9);
  }
}

TEST_CASE("monomer property densities: zero pair densities and translation sum") {
  const System sys = dimer_fixture();
  MonomerCoeffs basis = MonomerCoeffs::zero(sys.pairs);
  basis.eps_h[0] = 0.3;
  const MonomerDensities md =
      monomer_property_densities(basis, sys.props, sys.pairs);
  CHECK(md.eta_h[0].norm() == 0.0);
  CHECK(md.xi[0].norm() == 0.0);
  CHECK(md.basis.eps_h[0] == 0.3);

  std::mt19937_64 rng(23);
  std::normal_distribution<double> gauss;
  MonomerCoeffs rnd = MonomerCoeffs::zero(sys.pairs);
  for (int k = 0; k < sys.pairs.size(); ++k) {
    const auto [a, b] = sys.pairs.pairs()[k];
    const int m = sys.pairs.index(b, a);
    if (m < k) continue;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        rnd.v[k](i, j) = gauss(rng);
        rnd.v[m](j, i) = rnd.v[k](i, j);
      }
  }
  const MonomerDensities md2 =
      monomer_property_densities(rnd, sys.props, sys.pairs);
  Eigen::Vector3d xi_sum = Eigen::Vector3d::Zero();
  for (const auto& x : md2.xi) xi_sum += x;
  CHECK(xi_sum.norm() < 1e-12);  // couplings depend on centroid differences
}

TEST_CASE("nuclear gradient: zero densities give zero forces") {
  const System sys = dimer_fixture();
  MonomerDensities md;
  md.basis = MonomerCoeffs::zero(sys.pairs);
  md.eta_h.assign(2, Eigen::Vector3d::Zero());
  md.eta_t.assign(2, Eigen::Vector3d::Zero());
  md.eta_p.assign(2, Eigen::Vector3d::Zero());
  md.xi.assign(2, Eigen::Vector3d::Zero());
  const auto grad = nuclear_gradient(md, sys.grads, sys.geometry);
  for (const auto& g : grad) CHECK(g.norm() == 0.0);
}
