// Copyright 2026 The respkern Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "oracles.hpp"
#include "respkern/model.hpp"
#include "respkern/numerics.hpp"
#include "respkern/rdm.hpp"
#include "respkern/response.hpp"
#include "respkern/symops.hpp"

using namespace respkern;

TEST_SUITE_BEGIN("symops");

namespace {

Model dimer(double t, double u) {
  ModelSpec spec;
  spec.kind = ModelKind::hubbard_chain;
  spec.sites = 2;
  spec.t = t;
  spec.u = u;
  spec.filling = 2;
  return build_hubbard(spec);
}

}  // namespace

TEST_CASE("number operator has diagonal N") {
  auto space = FockSpace::enumerate(6, 2);
  auto n = number_op(space);
  CHECK((n.matrix - 2.0 * Matrix::Identity(15, 15)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("spin operators satisfy the su(2) algebra") {
  Model m = dimer(1.0, 4.0);
  SpinOperators s = spin_ops(m.space, m.layout);
  Matrix comm_xy = s.sx.matrix * s.sy.matrix - s.sy.matrix * s.sx.matrix;
  CHECK((comm_xy - Complex(0, 1) * s.sz.matrix).cwiseAbs().maxCoeff() < 1e-12);
  Matrix comm_yz = s.sy.matrix * s.sz.matrix - s.sz.matrix * s.sy.matrix;
  CHECK((comm_yz - Complex(0, 1) * s.sx.matrix).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(is_hermitian(s.sx.matrix, 1e-12));
  CHECK(is_hermitian(s.sy.matrix, 1e-12));
  CHECK(is_hermitian(s.sz.matrix, 1e-12));
}

TEST_CASE("spin_ops rejects odd layouts") {
  auto space = FockSpace::enumerate(3, 1);
  CHECK_THROWS_WITH_AS(spin_ops(space, SpinLayout{1}),
                       doctest::Contains("odd-orbital-layout"), Error);
}

TEST_CASE("singlet ground state is annihilated by all spin operators") {
  Model m = dimer(1.0, 4.0);
  GroundStateSolution gs = solve_ground(m.hamiltonian);
  SpinOperators s = spin_ops(m.space, m.layout);
  CHECK((s.sz.matrix * gs.psi0).norm() < 1e-10);
  CHECK((s.sp.matrix * gs.psi0).norm() < 1e-10);
  CHECK((s.sm.matrix * gs.psi0).norm() < 1e-10);
}

TEST_CASE("ladder action on a constructed triplet: S+|1,0> = sqrt(2)|1,1>") {
  auto space = FockSpace::enumerate(4, 2);
  SpinLayout layout = SpinLayout::blocked(2);
  SpinOperators s = spin_ops(space, layout);
  // blocked orbitals: 0=1up, 1=2up, 2=1dn, 3=2dn. In the ascending-order
  // determinant convention the M=0 triplet is (|{0,3}> - |{1,2}>)/sqrt(2)
  // since |{1,2}> = a+_{2up} a+_{1dn}|> carries the reordering sign.
  Vector t0 = Vector::Zero(space.size());
  t0(space.lookup(Determinant{0b1001})) = 1.0 / std::sqrt(2.0);   // {0,3}
  t0(space.lookup(Determinant{0b0110})) = -1.0 / std::sqrt(2.0);  // {1,2}
  Vector t1 = Vector::Zero(space.size());
  t1(space.lookup(Determinant{0b0011})) = 1.0;  // {0,1} both up
  Vector raised = s.sp.matrix * t0;
  CHECK((raised - std::sqrt(2.0) * t1).norm() < 1e-12);
  // and Sz eigenvalues bracket the multiplet
  CHECK((s.sz.matrix * t1 - t1).norm() < 1e-12);
  CHECK((s.sz.matrix * t0).norm() < 1e-12);
}

TEST_CASE("site densities sum to the number operator") {
  Model m = dimer(1.0, 2.0);
  auto ops = site_density_ops(m.space, m.layout);
  Matrix sum = Matrix::Zero(m.space.size(), m.space.size());
  for (const auto& op : ops) sum += op.matrix;
  CHECK((sum - number_op(m.space).matrix).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("site density expectations") {
  Model m = dimer(1.0, 3.0);
  GroundStateSolution gs = solve_ground(m.hamiltonian);
  auto ops = site_density_ops(m.space, m.layout);
  // symmetric dimer: both sites carry one electron
  CHECK(ops[0].expectation(gs.psi0).real() == doctest::Approx(1.0));
  CHECK(ops[1].expectation(gs.psi0).real() == doctest::Approx(1.0));
  // single determinant: site occupation is read off directly
  Vector det = Vector::Zero(m.space.size());
  det(m.space.lookup(Determinant{0b0101})) = 1.0;  // 1up, 1dn
  CHECK(ops[0].expectation(det).real() == doctest::Approx(2.0));
  CHECK(ops[1].expectation(det).real() == doctest::Approx(0.0));
}

TEST_CASE("S^2 commutes with spin-free model Hamiltonians") {
  for (double u : {0.0, 1.0, 4.0}) {
    ModelSpec spec;
    spec.kind = ModelKind::hubbard_chain;
    spec.sites = 3;
    spec.t = 1.0;
    spec.u = u;
    spec.filling = 2;
    Model m = build_hubbard(spec);
    SpinOperators s = spin_ops(m.space, m.layout);
    Matrix s2 = s_squared(s).matrix;
    Matrix comm = s2 * m.hamiltonian.matrix - m.hamiltonian.matrix * s2;
    CHECK(comm.cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("translation generator on the non-interacting ring") {
  ModelSpec spec;
  spec.kind = ModelKind::hubbard_chain;
  spec.sites = 4;
  spec.t = 1.0;
  spec.u = 0.0;
  spec.filling = 2;
  spec.periodic = true;
  Model m = build_hubbard(spec);
  auto p = translation_generator(m.space, m.layout, true);
  CHECK(is_hermitian(p.matrix, 1e-10));

  SUBCASE("commutes with the uniform ring Hamiltonian") {
    Matrix comm = p.matrix * m.hamiltonian.matrix - m.hamiltonian.matrix * p.matrix;
    CHECK(comm.cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("nondegenerate ground state is an eigenstate of the generator") {
    GroundStateSolution gs = solve_ground(m.hamiltonian);
    REQUIRE(gs.degeneracy == 1);
    Vector acted = p.matrix * gs.psi0;
    Complex lambda = gs.psi0.dot(acted);
    CHECK((acted - lambda * gs.psi0).norm() < 1e-10);
  }
  SUBCASE("appears in the 1RDM response kernel of the ring") {
    GroundStateSolution gs = solve_ground(m.hamiltonian);
    OperatorSet set;
    const int morb = m.space.n_orbitals();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int a = 0; a < morb; ++a) {
      OneBodyMatrix u = OneBodyMatrix::Zero(morb, morb);
      u(a, a) = 1.0;
      set.ops.push_back(build_one_body(m.space, u, "n"));
    }
    for (int a = 0; a < morb; ++a)
      for (int b = a + 1; b < morb; ++b) {
        OneBodyMatrix ur = OneBodyMatrix::Zero(morb, morb);
        ur(a, b) = inv_sqrt2;
        ur(b, a) = inv_sqrt2;
        set.ops.push_back(build_one_body(m.space, ur, "re"));
        OneBodyMatrix ui = OneBodyMatrix::Zero(morb, morb);
        ui(a, b) = Complex(0, inv_sqrt2);
        ui(b, a) = Complex(0, -inv_sqrt2);
        set.ops.push_back(build_one_body(m.space, ui, "im"));
      }
    GroundStateSolution gs2 = solve_ground(m.hamiltonian);
    KernelDiagnostics diag;
    // represent P in the hermitian basis and diagnose it
    RealVector w(set.size());
    int idx = 0;
    for (int a = 0; a < morb; ++a) w(idx++) = (*p.one_body)(a, a).real();
    for (int a = 0; a < morb; ++a)
      for (int b = a + 1; b < morb; ++b) {
        w(idx++) = std::sqrt(2.0) * (*p.one_body)(a, b).real();
        w(idx++) = std::sqrt(2.0) * (*p.one_body)(a, b).imag();
      }
    diag = diagnose_candidate(w, set, gs2);
    CHECK(diag.accepted);
  }
}

TEST_CASE("translation generator requires a periodic ring") {
  auto space = FockSpace::enumerate(8, 4);
  CHECK_THROWS_WITH_AS(translation_generator(space, SpinLayout::blocked(4), false),
                       doctest::Contains("non-periodic-layout"), Error);
}

TEST_CASE("Sz is in the 1RDM kernel for a spin-free nondegenerate ground state") {
  Model m = dimer(1.0, 4.0);
  GroundStateSolution gs = solve_ground(m.hamiltonian);
  SpinOperators s = spin_ops(m.space, m.layout);
  Vector acted = s.sz.matrix * gs.psi0;
  CHECK(acted.norm() < 1e-10);  // eigenstate with eigenvalue 0
}

TEST_SUITE_END();
