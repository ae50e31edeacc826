// Copyright 2026 The respkern Authors
// SPDX-License-Identifier: Apache-2.0

#include "respkern/numerics.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

namespace respkern {

Quadrature gauss_legendre(int n) {
  if (n < 1) fail("invalid-argument", "quadrature order must be positive");
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  // Newton iteration on Legendre polynomials, seeded by the Chebyshev-like
  // asymptotic root estimate. Symmetric rule, solve only half.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    q.nodes[i] = -x;
    q.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.weights[i] = w;
    q.weights[n - 1 - i] = w;
  }
  return q;
}

Quadrature gauss_half_line(int n, double scale) {
  Quadrature base = gauss_legendre(n);
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = base.nodes[i];
    q.nodes[i] = scale * (1.0 + x) / (1.0 - x);
    q.weights[i] = base.weights[i] * 2.0 * scale / ((1.0 - x) * (1.0 - x));
  }
  return q;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

RealMatrix nullspace(const RealMatrix& a, double rel_tol, double abs_floor) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0 || n == 0) return RealMatrix::Identity(n, n);
  Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (smax < abs_floor) return RealMatrix::Identity(n, n);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * smax) ++rank;
  if (rank == n) return RealMatrix(n, 0);
  return svd.matrixV().rightCols(n - rank);
}

RealMatrix orthonormal_columns(const RealMatrix& m) {
  if (m.cols() == 0) return m;
  Eigen::HouseholderQR<RealMatrix> qr(m);
  RealMatrix q = qr.householderQ() * RealMatrix::Identity(m.rows(), m.cols());
  return q;
}

double max_principal_sine(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.cols()) return 1.0;
  if (a.cols() == 0) return 0.0;
  RealMatrix qa = orthonormal_columns(a);
  RealMatrix qb = orthonormal_columns(b);
  RealMatrix ra = qb - qa * (qa.transpose() * qb);
  RealMatrix rb = qa - qb * (qb.transpose() * qa);
  double s = std::max(ra.jacobiSvd().singularValues()(0),
                      rb.jacobiSvd().singularValues()(0));
  return std::min(s, 1.0);
}

double sine_to_span(const RealVector& v, const RealMatrix& basis) {
  double nv = v.norm();
  if (nv == 0.0) return 0.0;
  if (basis.cols() == 0) return 1.0;
  RealMatrix q = orthonormal_columns(basis);
  RealVector r = v - q * (q.transpose() * v);
  return std::min(r.norm() / nv, 1.0);
}

Matrix random_hermitian(int dim, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(g(rng), g(rng));
  Matrix h = 0.5 * (m + m.adjoint());
  return h;
}

}  // namespace respkern
