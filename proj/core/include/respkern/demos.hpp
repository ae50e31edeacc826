// Copyright 2026 The respkern Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "respkern/response.hpp"

namespace respkern {

/// Matrix elements of operators over hydrogenic n=2 (and optionally 3p_x)
/// states, computed by high-order radial quadrature with analytic angular
/// factors. Supported basis labels: "2s", "2p_x", "2p_y", "3p_x"; operator
/// labels: "1", "x", "y", "ipx3" (the projected i d^3/dx^3).
struct HydrogenSpace {
  std::vector<std::string> basis;
  std::vector<std::string> op_labels;
  std::vector<Matrix> elements;  // one matrix per operator
  Matrix overlaps;               // quadrature overlaps of the basis functions
  /// <2s|[Q_i, Q_j]|2s> evaluated at the operator level (the commutators are
  /// reduced analytically before quadrature; matrix products of projected
  /// operators would misrepresent them).
  Matrix commutators;

  int index_of_basis(const std::string& label) const;
  int index_of_op(const std::string& label) const;
};

HydrogenSpace hydrogen_matrix_elements(const std::vector<std::string>& basis,
                                       const std::vector<std::string>& ops);

/// The three worked kernel cases on the degenerate hydrogen subspace with
/// Psi0 = |2s>:
///  (a) {1, x, y} on {2s, 2p_x, 2p_y}; fully degenerate, kernel dim 3.
///  (b) same operators with |3p_x> added to the space at Omega = 5/72;
///      the x operator is expelled by the first condition.
///  (c) operators extended by i d^3/dx^3 on the 3-space; x and ipx3 are
///      expelled by the commutator condition with |<2s|[x, ipx3]|2s>| = 1/4.
struct HydrogenKernelCases {
  ResponseKernelResult case_a, case_b, case_c;
  double agreement_a = 1, agreement_b = 1, agreement_c = 1;  // vs chi oracle
  double chi_grid_max_a = 0;  // max |chi_ij(t)| over a 100-point grid
  Complex comm_x_ipx3;        // <2s|[x, ipx3]|2s>
};

HydrogenKernelCases hydrogen_example_kernels();

/// Real wavefunction sampled on a uniform square grid, normalized by the
/// trapezoid rule.
struct GridWavefunction {
  RealMatrix values;
  double spacing = 0;
  double origin = 0;  // coordinate of index 0 in both directions

  static GridWavefunction sample(const std::function<double(double, double)>& f,
                                 double half_extent, int n);
};

struct Strip {
  double x_center = 0.0;
  double half_width = 0.5;
  double y_lo = 0.5;
  double y_hi = 2.0;
};

struct DivergenceTable {
  std::vector<int> grid_sizes;
  std::vector<double> integrals;  // strip integral of |psiK / psi0|^2
  std::vector<double> ratios;     // integrals[k+1] / integrals[k]
  bool divergent = false;         // every ratio >= 1.5
};

/// Strip integral of |v_K|^2 = |psiK / psi0|^2 under grid refinement.
/// Divergence (growth without bound) demonstrates that the candidate
/// potential is not square integrable across the nodal line of psi0.
/// Errors: coincident-nodes when psi0 vanishes on the whole strip.
DivergenceTable nodal_potential_divergence(
    const std::function<double(double, double)>& psi0,
    const std::function<double(double, double)>& psiK, const Strip& strip,
    int base_n = 121, int refinements = 4, double half_extent = 6.0);

}  // namespace respkern
