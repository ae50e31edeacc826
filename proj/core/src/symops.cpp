// Copyright 2026 The respkern Authors
// SPDX-License-Identifier: Apache-2.0

#include "respkern/symops.hpp"

#include <cmath>

namespace respkern {

ManyBodyOperator number_op(const FockSpace& space) {
  OneBodyMatrix u = OneBodyMatrix::Identity(space.n_orbitals(),
                                            space.n_orbitals());
  return build_one_body(space, u, "N");
}

SpinOperators spin_ops(const FockSpace& space, const SpinLayout& layout) {
  const int m = space.n_orbitals();
  if (layout.n_orbitals() != m || m % 2 != 0)
    fail("odd-orbital-layout", "spin-1/2 layout needs an even orbital count "
                               "matching the sector");
  const Complex I(0, 1);
  OneBodyMatrix up = OneBodyMatrix::Zero(m, m);  // S+
  OneBodyMatrix uz = OneBodyMatrix::Zero(m, m);
  for (int k = 0; k < layout.n_sites; ++k) {
    up(layout.up(k), layout.down(k)) = 1.0;
    uz(layout.up(k), layout.up(k)) = 0.5;
    uz(layout.down(k), layout.down(k)) = -0.5;
  }
  OneBodyMatrix um = up.adjoint();
  OneBodyMatrix ux = 0.5 * (up + um);
  OneBodyMatrix uy = (up - um) / (2.0 * I);
  return SpinOperators{
      build_one_body(space, uz, "Sz"), build_one_body(space, up, "S+"),
      build_one_body(space, um, "S-"), build_one_body(space, ux, "Sx"),
      build_one_body(space, uy, "Sy")};
}

ManyBodyOperator s_squared(const SpinOperators& s) {
  Matrix m = s.sx.matrix * s.sx.matrix + s.sy.matrix * s.sy.matrix +
             s.sz.matrix * s.sz.matrix;
  return ManyBodyOperator{"S^2", std::move(m), std::nullopt};
}

std::vector<ManyBodyOperator> site_density_ops(const FockSpace& space,
                                               const SpinLayout& layout) {
  const int m = space.n_orbitals();
  if (layout.n_orbitals() != m)
    fail("dimension-mismatch", "layout does not match sector orbitals");
  std::vector<ManyBodyOperator> ops;
  ops.reserve(layout.n_sites);
  for (int i = 0; i < layout.n_sites; ++i) {
    OneBodyMatrix u = OneBodyMatrix::Zero(m, m);
    u(layout.up(i), layout.up(i)) = 1.0;
    u(layout.down(i), layout.down(i)) = 1.0;
    ops.push_back(build_one_body(space, u, "n" + std::to_string(i)));
  }
  return ops;
}

ManyBodyOperator translation_generator(const FockSpace& space,
                                       const SpinLayout& layout,
                                       bool periodic_ring) {
  if (!periodic_ring)
    fail("non-periodic-layout",
         "translation generator requires a periodic ring");
  const int L = layout.n_sites;
  const int m = space.n_orbitals();
  if (layout.n_orbitals() != m)
    fail("dimension-mismatch", "layout does not match sector orbitals");
  const Complex I(0, 1);
  // P = sum_k k_m |k><k| per spin with Bloch orbitals
  // <j|k_m> = exp(i k_m j)/sqrt(L) and momenta on the (-pi, pi] branch.
  OneBodyMatrix u = OneBodyMatrix::Zero(m, m);
  for (int mm = 0; mm < L; ++mm) {
    int folded = (mm <= L / 2) ? mm : mm - L;
    double k = 2.0 * M_PI * folded / L;
    for (int j = 0; j < L; ++j) {
      for (int jp = 0; jp < L; ++jp) {
        Complex phase = std::exp(I * k * static_cast<double>(j - jp)) / double(L);
        u(layout.up(j), layout.up(jp)) += k * phase;
        u(layout.down(j), layout.down(jp)) += k * phase;
      }
    }
  }
  return build_one_body(space, u, "P");
}

}  // namespace respkern
