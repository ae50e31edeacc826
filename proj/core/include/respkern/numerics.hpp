// Copyright 2026 The respkern Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>
#include <utility>
#include <vector>

#include "respkern/types.hpp"

namespace respkern {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

Quadrature gauss_legendre(int n);

/// Rule for integrals over [0, inf) obtained from Gauss-Legendre by the
/// rational map r = scale * (1 + x) / (1 - x). Suited to exponentially
/// decaying integrands.
Quadrature gauss_half_line(int n, double scale = 2.0);

bool is_hermitian(const Matrix& m, double tol = 1e-12);

/// Orthonormal basis of the (right) null space of a real matrix.
/// Singular values below rel_tol * s_max count as zero. A matrix whose
/// largest singular value is below abs_floor is treated as zero, so the
/// null space is the full domain.
RealMatrix nullspace(const RealMatrix& a, double rel_tol = 1e-8,
                     double abs_floor = 1e-13);

/// Columns orthonormalized by Householder QR (rank assumed full).
RealMatrix orthonormal_columns(const RealMatrix& m);

/// Largest principal-angle sine between the column spans of a and b,
/// measured both ways. Zero iff the spans coincide. Stable for tiny angles
/// where acos of a cosine would lose precision.
double max_principal_sine(const RealMatrix& a, const RealMatrix& b);

/// Sine of the angle between vector v and the span of basis columns.
double sine_to_span(const RealVector& v, const RealMatrix& basis);

Matrix random_hermitian(int dim, std::mt19937& rng);

}  // namespace respkern
