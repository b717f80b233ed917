// Copyright (c) 2026, the mcvqe developers.
// SPDX-License-Identifier: Apache-2.0
#include "mcvqe/system.hpp"

#include <doctest.h>

#include "mcvqe/errors.hpp"
#include "mcvqe/oracle.hpp"
#include "mcvqe/validate.hpp"
#include "support.hpp"

using namespace mcvqe;
using mcvqe::testing::dimer_fixture;

namespace {

System single_monomer_system() {
  Geometry g;
  g.monomers.resize(1);
  g.monomers[0].atoms = {{{0, 0, 0}, 12.0}, {{2.4, 0, 0}, 12.0}};
  std::vector<SyntheticMonomerParams> p = {
      {0.4, 0.35, 2.1, 2.2, 0.13, 1.0, 1.2, 0.9}};
  return make_synthetic_system(std::move(g), std::move(p));
}

}  // namespace

TEST_CASE("bundled synthetic file loads and matches the in-code fixture") {
  const System sys = load_synthetic_file(std::string(MCVQE_DATA_DIR) + "/dimer.json");
  const System fix = dimer_fixture();
  CHECK(sys.geometry.num_monomers() == 2);
  CHECK(sys.pairs.size() == 2);
  CHECK((sys.props.eps_h - fix.props.eps_h).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((sys.props.mu_t[1] - fix.props.mu_t[1]).norm() < 1e-15);
}

TEST_CASE("single monomer energies are the two-level energies") {
  const System sys = single_monomer_system();
  MethodSpec spec;
  spec.method = Method::McVqe;
  spec.options.num_states = 2;
  const Eigen::VectorXd e = compute_energies(sys, spec);
  CHECK(e[0] == doctest::Approx(sys.props.eps_h[0]).epsilon(1e-10));
  CHECK(e[1] == doctest::Approx(sys.props.eps_p[0]).epsilon(1e-10));
}

TEST_CASE("identity entangler energies equal CIS energies") {
  const System sys = dimer_fixture();
  MethodSpec vqe;
  vqe.method = Method::McVqe;
  vqe.layout.kind = EntanglerLayout::Kind::Identity;
  MethodSpec cis;
  cis.method = Method::Cis;
  const Eigen::VectorXd a = compute_energies(sys, vqe);
  const Eigen::VectorXd b = compute_energies(sys, cis);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("mc-vqe energies bound the fci energies from above") {
  const System sys = dimer_fixture();
  MethodSpec vqe;
  vqe.method = Method::McVqe;
  MethodSpec fci;
  fci.method = Method::Fci;
  const Eigen::VectorXd e_vqe = compute_energies(sys, vqe);
  const Eigen::VectorXd e_fci = compute_energies(sys, fci);
  for (int th = 0; th < 2; ++th) CHECK(e_vqe[th] >= e_fci[th] - 1e-12);
}

TEST_CASE("zero-coupling minimum geometry has zero ground-state gradient") {
  Geometry g;
  g.monomers.resize(2);
  g.monomers[0].atoms = {{{0, 0, 0}, 12.0}, {{2.1, 0, 0}, 12.0}};
  g.monomers[1].atoms = {{{7, 0, 0}, 12.0}, {{9.05, 0, 0}, 12.0}};
  std::vector<SyntheticMonomerParams> p = {
      {0.4, 0.35, 2.1, 2.2, 0.13, 0.0, 0.0, 0.0},
      {0.3, 0.25, 2.05, 2.15, 0.15, 0.0, 0.0, 0.0}};
  const System sys = make_synthetic_system(std::move(g), std::move(p));
  MethodSpec spec;
  spec.method = Method::Fci;
  const GradientResult res = compute_gradient(sys, spec, 0);
  for (const auto& atom : res.gradient) CHECK(atom.norm() < 1e-10);
}

TEST_CASE("gradients sum to zero for the translation-invariant model") {
  const System sys = dimer_fixture();
  for (Method method : {Method::Fci, Method::Cis, Method::McVqe}) {
    MethodSpec spec;
    spec.method = method;
    const GradientResult res = compute_gradient(sys, spec, 1);
    Eigen::Vector3d total = Eigen::Vector3d::Zero();
    for (const auto& atom : res.gradient) total += atom;
    CHECK(total.norm() < 1e-9);
  }
}

TEST_CASE("identity-entangler full-subspace gradients equal the CIS oracle") {
  const System sys = dimer_fixture();
  MethodSpec vqe;
  vqe.method = Method::McVqe;
  vqe.layout.kind = EntanglerLayout::Kind::Identity;
  vqe.options.num_states = 3;
  MethodSpec cis;
  cis.method = Method::Cis;
  cis.options.num_states = 3;
  for (int state : {0, 1, 2}) {
    const GradientResult a = compute_gradient(sys, vqe, state);
    const GradientResult b = compute_gradient(sys, cis, state);
    for (std::size_t z = 0; z < a.gradient.size(); ++z)
      CHECK((a.gradient[z] - b.gradient[z]).norm() < 1e-9);
  }
}

TEST_CASE("fci relaxed densities equal unrelaxed") {
  const System sys = dimer_fixture();
  MethodSpec spec;
  spec.method = Method::Fci;
  const GradientResult res = compute_gradient(sys, spec, 1);
  PauliCoeffs diff = res.densities.relaxed;
  diff -= res.densities.unrelaxed;
  CHECK(diff.max_abs() < 1e-9);
}

TEST_CASE("pauli-layer validation separates full and deficient response") {
  const System sys = dimer_fixture();
  auto make = [](Method m, bool v, bool c) {
    MethodSpec spec;
    spec.method = m;
    spec.toggles = {v, c};
    spec.options.gtol = 1e-11;
    return spec;
  };
  const std::vector<MethodSpec> methods = {make(Method::Fci, true, true),
                                           make(Method::McVqe, true, true),
                                           make(Method::McVqe, false, false)};
  const auto rows = validate_layer(sys, ValidationLayer::Pauli, methods);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].method == "FCI");
  CHECK(rows[0].worst <= 1e-8);
  CHECK(rows[1].method == "VQE(Y,Y)");
  CHECK(rows[1].worst <= 1e-7);
  CHECK(rows[2].method == "VQE(N,N)");
  CHECK(rows[2].worst >= 1e-3);
}

TEST_CASE("four response variants give four distinct gradients") {
  const System sys = dimer_fixture();
  std::vector<std::vector<Eigen::Vector3d>> grads;
  for (auto [v, c] : {std::pair{true, true}, {true, false}, {false, true},
                      {false, false}}) {
    MethodSpec spec;
    spec.method = Method::McVqe;
    spec.toggles = {v, c};
    grads.push_back(compute_gradient(sys, spec, 1).gradient);
  }
  for (std::size_t i = 0; i < grads.size(); ++i) {
    for (std::size_t j = i + 1; j < grads.size(); ++j) {
      double diff = 0.0;
      for (std::size_t z = 0; z < grads[i].size(); ++z)
        diff = std::max(diff, (grads[i][z] - grads[j][z]).cwiseAbs().maxCoeff());
      CHECK(diff > 1e-4);
    }
  }
}

TEST_CASE("tabulated ingestion reproduces the synthetic pipeline") {
  // data/dimer_tabulated.json is the synthetic dimer exported with its
  // property gradients; both ingestion paths must agree through the whole
  // gradient chain
  const System synth = dimer_fixture();
  const System tab = system_from_tabulated(
      load_tabulated(std::string(MCVQE_DATA_DIR) + "/dimer_tabulated.json"));
  MethodSpec spec;
  spec.method = Method::McVqe;
  const GradientResult a = compute_gradient(synth, spec, 1);
  const GradientResult b = compute_gradient(tab, spec, 1);
  CHECK((a.energies - b.energies).cwiseAbs().maxCoeff() < 1e-14);
  for (std::size_t z = 0; z < a.gradient.size(); ++z)
    CHECK((a.gradient[z] - b.gradient[z]).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("tabulated systems refuse geometry refresh") {
  const TabulatedSystem tab =
      load_tabulated(std::string(MCVQE_DATA_DIR) + "/dimer_tabulated.json");
  System sys = system_from_tabulated(tab);
  CHECK_FALSE(sys.synthetic);
  CHECK_THROWS_AS(refresh_properties(sys), ValidationError);
  // but energies evaluate fine at the stored geometry
  MethodSpec spec;
  spec.method = Method::Cis;
  const Eigen::VectorXd e = compute_energies(sys, spec);
  CHECK(e.size() == 2);
}

TEST_CASE("method labels") {
  MethodSpec spec;
  spec.method = Method::McVqe;
  spec.toggles = {false, true};
  CHECK(method_label(spec) == "VQE(N,Y)");
  spec.method = Method::Fci;
  CHECK(method_label(spec) == "FCI");
}

TEST_CASE("invalid state index is rejected") {
  const System sys = dimer_fixture();
  MethodSpec spec;
  spec.method = Method::Fci;
  CHECK_THROWS_AS(compute_gradient(sys, spec, 5), ValidationError);
}
