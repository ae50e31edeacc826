// Copyright 2026 The respkern Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "respkern/fock.hpp"

namespace respkern {

/// Mapping between spin-orbital indices and (site, spin) labels.
/// Blocked layout: orbitals 0..n_sites-1 are spin-up on sites 0..n_sites-1,
/// orbitals n_sites..2*n_sites-1 are spin-down.
struct SpinLayout {
  int n_sites = 0;

  static SpinLayout blocked(int n_sites) { return SpinLayout{n_sites}; }

  int n_orbitals() const { return 2 * n_sites; }
  int up(int site) const { return site; }
  int down(int site) const { return n_sites + site; }
  int site_of(int orbital) const { return orbital % n_sites; }
  bool is_up(int orbital) const { return orbital < n_sites; }
};

/// Total number operator, the identity one-body matrix on the sector.
ManyBodyOperator number_op(const FockSpace& space);

struct SpinOperators {
  ManyBodyOperator sz, sp, sm, sx, sy;
};

/// su(2) realizations: S+ = sum_k a+_{k,up} a_{k,dn}, S- its adjoint,
/// Sx = (S+ + S-)/2, Sy = (S+ - S-)/(2i), Sz = (N_up - N_dn)/2.
SpinOperators spin_ops(const FockSpace& space, const SpinLayout& layout);

/// Sx^2 + Sy^2 + Sz^2 as a dense operator.
ManyBodyOperator s_squared(const SpinOperators& s);

/// One operator per site, n_i = sum_sigma a+_{i,sigma} a_{i,sigma}.
std::vector<ManyBodyOperator> site_density_ops(const FockSpace& space,
                                               const SpinLayout& layout);

/// Hermitian one-body generator diagonal in the Bloch one-particle basis of
/// a ring, with eigenvalues equal to the lattice momenta in (-pi, pi].
ManyBodyOperator translation_generator(const FockSpace& space,
                                       const SpinLayout& layout,
                                       bool periodic_ring);

}  // namespace respkern
