// Copyright 2026 The respkern Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "respkern/model.hpp"
#include "respkern/rdm.hpp"
#include "respkern/response.hpp"
#include "respkern/symops.hpp"

using namespace respkern;

namespace {

Model hubbard(int sites, double u, int filling, bool periodic = false) {
  ModelSpec spec;
  spec.kind = ModelKind::hubbard_chain;
  spec.sites = sites;
  spec.t = 1.0;
  spec.u = u;
  spec.filling = filling;
  spec.periodic = periodic;
  return build_hubbard(spec);
}

OperatorSet hermitian_basis(const FockSpace& space) {
  OperatorSet set;
  const int m = space.n_orbitals();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int p = 0; p < m; ++p) {
    OneBodyMatrix u = OneBodyMatrix::Zero(m, m);
    u(p, p) = 1.0;
    set.ops.push_back(build_one_body(space, u, "n"));
  }
  for (int p = 0; p < m; ++p)
    for (int q = p + 1; q < m; ++q) {
      OneBodyMatrix ur = OneBodyMatrix::Zero(m, m);
      ur(p, q) = inv_sqrt2;
      ur(q, p) = inv_sqrt2;
      set.ops.push_back(build_one_body(space, ur, "re"));
      OneBodyMatrix ui = OneBodyMatrix::Zero(m, m);
      ui(p, q) = Complex(0, inv_sqrt2);
      ui(q, p) = Complex(0, -inv_sqrt2);
      set.ops.push_back(build_one_body(space, ui, "im"));
    }
  return set;
}

void BM_EnumerateSector(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(FockSpace::enumerate(m, m / 2));
}
BENCHMARK(BM_EnumerateSector)->Arg(8)->Arg(12)->Arg(16);

void BM_BuildOneBody(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  Model m = hubbard(sites, 1.0, sites);
  OneBodyMatrix u = OneBodyMatrix::Identity(2 * sites, 2 * sites);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_one_body(m.space, u, "N"));
}
BENCHMARK(BM_BuildOneBody)->Arg(2)->Arg(3)->Arg(4);

void BM_SolveGround(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  Model m = hubbard(sites, 4.0, sites);
  for (auto _ : state) benchmark::DoNotOptimize(solve_ground(m.hamiltonian));
}
BENCHMARK(BM_SolveGround)->Arg(2)->Arg(3)->Arg(4);

void BM_KernelByConditions(benchmark::State& state) {
  Model m = hubbard(2, 4.0, 2);
  GroundStateSolution gs = solve_ground(m.hamiltonian);
  OperatorSet set = hermitian_basis(m.space);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernel_by_conditions(set, gs));
}
BENCHMARK(BM_KernelByConditions);

void BM_KernelByChiNullspace(benchmark::State& state) {
  Model m = hubbard(2, 4.0, 2);
  GroundStateSolution gs = solve_ground(m.hamiltonian);
  OperatorSet set = hermitian_basis(m.space);
  TransitionMoments tm = transition_moments(set, gs);
  const std::vector<double> samples = {0.5, 1.0, 2.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(kernel_by_chi_nullspace(tm, samples));
}
BENCHMARK(BM_KernelByChiNullspace);

void BM_Compute1RDM(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  Model m = hubbard(sites, 4.0, sites);
  GroundStateSolution gs = solve_ground(m.hamiltonian);
  for (auto _ : state)
    benchmark::DoNotOptimize(compute_1rdm(gs.psi0, m.space));
}
BENCHMARK(BM_Compute1RDM)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
