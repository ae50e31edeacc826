// Copyright 2026 The respkern Authors
// SPDX-License-Identifier: Apache-2.0

#include "respkern/response.hpp"

#include <cmath>
#include <random>
#include <set>

#include "respkern/numerics.hpp"
#include "respkern/rdm.hpp"

namespace respkern {

namespace {

void validate_set(const OperatorSet& set, Eigen::Index dim) {
  if (set.size() == 0) fail("empty-operator-set", "no operators supplied");
  for (const auto& op : set.ops) {
    if (op.matrix.rows() != dim)
      fail("dimension-mismatch",
           "operator '" + op.label + "' does not match the Hilbert space");
    if (!is_hermitian(op.matrix, 1e-12 * std::max(1.0, op.matrix.norm())))
      fail("non-hermitian-operator", "operator '" + op.label + "'");
  }
}

/// Real matrix of the f0 conditions: rows are Re/Im of
/// <Psi_K| Q_j |Psi0> over K >= D, columns the operator index j.
RealMatrix f0_condition_matrix(const OperatorSet& set,
                               const GroundStateSolution& gs) {
  const int m = set.size();
  const Eigen::Index dim = gs.dim();
  const int d = gs.degeneracy;
  Matrix c(dim - d, m);
  for (int j = 0; j < m; ++j) {
    Vector qpsi = set[j].matrix * gs.psi0;
    c.col(j) = gs.vectors.rightCols(dim - d).adjoint() * qpsi;
  }
  RealMatrix a(2 * (dim - d), m);
  a.topRows(dim - d) = c.real();
  a.bottomRows(dim - d) = c.imag();
  return a;
}

/// Imaginary parts of <Psi0|[Q_i, Q_j]|Psi0>. The expectations are purely
/// imaginary for hermitian operators, so this holds the full content of the
/// degenerate-case commutator conditions.
RealMatrix commutator_matrix(const OperatorSet& set,
                             const GroundStateSolution& gs,
                             const KernelOptions& opts) {
  const int m = set.size();
  if (opts.commutator_expectations) {
    const Matrix& table = *opts.commutator_expectations;
    if (table.rows() != m || table.cols() != m)
      fail("dimension-mismatch", "commutator expectation table size");
    return table.imag();
  }
  RealMatrix b = RealMatrix::Zero(m, m);
  std::vector<Vector> qpsi(m);
  for (int i = 0; i < m; ++i) qpsi[i] = set[i].matrix * gs.psi0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      // <[Q_i, Q_j]> = <Q_i psi0, Q_j psi0> - <Q_j psi0, Q_i psi0>
      Complex val = qpsi[i].dot(qpsi[j]) - qpsi[j].dot(qpsi[i]);
      b(i, j) = val.imag();
      b(j, i) = -val.imag();
    }
  return b;
}

KernelDiagnostics diagnose(const RealVector& w, const OperatorSet& set,
                           const GroundStateSolution& gs,
                           const RealMatrix& f0, const RealMatrix& comm,
                           double accept_tol) {
  KernelDiagnostics diag;
  diag.coeffs = w;
  diag.residual_f0 = (f0 * w).norm();
  const int d = gs.degeneracy;
  Matrix l = Matrix::Zero(gs.dim(), gs.dim());
  for (int j = 0; j < set.size(); ++j) l += w(j) * set[j].matrix;
  Vector lpsi = l * gs.psi0;
  // l^K = <Psi0| L |Psi_K>, the degenerate-subspace components of L psi0.
  diag.l_components = (gs.vectors.leftCols(d).adjoint() * lpsi).conjugate();
  if (d > 1) {
    diag.residual_comm = (comm * w).cwiseAbs().maxCoeff();
  } else {
    double lv = gs.psi0.dot(lpsi).real();
    diag.eigenvalue = lv;
    diag.eigen_residual = (lpsi - lv * gs.psi0).norm();
  }
  double scale = std::max(1.0, w.norm());
  diag.accepted = diag.residual_f0 <= accept_tol * scale &&
                  diag.residual_comm <= accept_tol * scale;
  return diag;
}

std::vector<RealVector> matrix_to_columns(const RealMatrix& m) {
  std::vector<RealVector> cols;
  cols.reserve(m.cols());
  for (Eigen::Index i = 0; i < m.cols(); ++i) cols.push_back(m.col(i));
  return cols;
}

}  // namespace

TransitionMoments transition_moments(const OperatorSet& set,
                                     const GroundStateSolution& gs) {
  validate_set(set, gs.dim());
  TransitionMoments tm;
  tm.q = Matrix(set.size(), gs.dim());
  for (int i = 0; i < set.size(); ++i)
    tm.q.row(i) = (gs.psi0.adjoint() * set[i].matrix * gs.vectors);
  tm.omega = gs.omega;
  tm.degeneracy = gs.degeneracy;
  return tm;
}

Complex chi_time(const TransitionMoments& tm, int i, int j, double t) {
  if (t < 0) return Complex(0, 0);
  const Complex I(0, 1);
  Complex acc(0, 0);
  for (Eigen::Index k = 0; k < tm.dim(); ++k)
    acc += std::exp(I * tm.omega(k) * t) * std::conj(tm.q(i, k)) * tm.q(j, k);
  Complex z = I * acc;
  return z + std::conj(z);
}

Complex chi_laplace(const TransitionMoments& tm, int i, int j, double s) {
  if (s <= 0) fail("nonpositive-s", "Laplace variable must be positive");
  const Complex I(0, 1);
  Complex acc(0, 0);
  for (Eigen::Index k = 0; k < tm.dim(); ++k) {
    acc += I * std::conj(tm.q(i, k)) * tm.q(j, k) / (s - I * tm.omega(k));
    acc -= I * tm.q(i, k) * std::conj(tm.q(j, k)) / (s + I * tm.omega(k));
  }
  return acc;
}

double Profile::eval(double t) const {
  if (t < 0) return 0.0;
  switch (kind) {
    case ProfileKind::exponential:
      return std::exp(-rate * t);
    case ProfileKind::step:
      return 1.0;
    case ProfileKind::damped_cosine:
      return std::exp(-rate * t) * std::cos(freq * t);
  }
  fail("unsupported-profile", "unknown profile kind");
}

double Profile::laplace(double s) const {
  switch (kind) {
    case ProfileKind::exponential:
      return 1.0 / (s + rate);
    case ProfileKind::step:
      return 1.0 / s;
    case ProfileKind::damped_cosine:
      return (s + rate) / ((s + rate) * (s + rate) + freq * freq);
  }
  fail("unsupported-profile", "unknown profile kind");
}

PowerIdentity power_identity_check(const TransitionMoments& tm,
                                   const Perturbation& pert, double s) {
  if (s <= 0) fail("nonpositive-s", "Laplace variable must be positive");
  if (pert.weights.size() != tm.n_ops())
    fail("dimension-mismatch", "weight vector does not match operator set");
  const double lf = pert.profile.laplace(s);

  // lhs through the response-function route.
  Complex lhs(0, 0);
  for (int i = 0; i < tm.n_ops(); ++i) {
    Complex dq(0, 0);
    for (int j = 0; j < tm.n_ops(); ++j)
      dq += chi_laplace(tm, i, j, s) * pert.weights(j) * lf;
    lhs += pert.weights(i) * lf * dq;
  }

  // rhs directly from a_K(t) = sum_j q_j^K dv_j(t).
  double rhs = 0.0;
  for (Eigen::Index k = 0; k < tm.dim(); ++k) {
    Complex a(0, 0);
    for (int j = 0; j < tm.n_ops(); ++j) a += tm.q(j, k) * pert.weights(j);
    double la2 = std::norm(a) * lf * lf;
    rhs -= 2.0 * tm.omega(k) / (s * s + tm.omega(k) * tm.omega(k)) * la2;
  }

  PowerIdentity out;
  out.lhs = lhs.real();
  out.rhs = rhs;
  out.residual = std::abs(lhs - Complex(rhs, 0));
  return out;
}

RealMatrix lehmann_convolution(const TransitionMoments& tm,
                               const Perturbation& pert,
                               const RealVector& t_grid) {
  const int m = tm.n_ops();
  if (pert.weights.size() != m)
    fail("dimension-mismatch", "weights do not match the operator set");
  const Eigen::Index n = t_grid.size();
  if (n < 2) fail("invalid-argument", "need at least two grid points");
  const double dt = t_grid(1) - t_grid(0);
  for (Eigen::Index k = 1; k < n; ++k)
    if (std::abs((t_grid(k) - t_grid(k - 1)) - dt) > 1e-12 * std::max(1.0, dt))
      fail("invalid-argument", "convolution grid must be uniform");

  // chi_ij depends on t - tau only; cache it on the grid offsets.
  std::vector<Matrix> chi(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    chi[k] = Matrix(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) chi[k](i, j) = chi_time(tm, i, j, t_grid(k));
  }
  RealVector f(n);
  for (Eigen::Index k = 0; k < n; ++k) f(k) = pert.profile.eval(t_grid(k));

  RealMatrix dq = RealMatrix::Zero(m, n);
  for (Eigen::Index k = 1; k < n; ++k) {
    for (int i = 0; i < m; ++i) {
      double acc = 0;
      for (Eigen::Index l = 0; l <= k; ++l) {
        double wq = (l == 0 || l == k) ? 0.5 : 1.0;
        Complex c(0, 0);
        for (int j = 0; j < m; ++j)
          c += chi[k - l](i, j) * pert.weights(j);
        acc += wq * c.real() * f(l);
      }
      dq(i, k) = acc * dt;
    }
  }
  return dq;
}

ResponseKernelResult kernel_by_conditions(const OperatorSet& set,
                                          const GroundStateSolution& gs,
                                          const KernelOptions& opts) {
  validate_set(set, gs.dim());
  const int m = set.size();
  const RealMatrix f0 = f0_condition_matrix(set, gs);
  const RealMatrix comm = gs.degeneracy > 1
                              ? commutator_matrix(set, gs, opts)
                              : RealMatrix::Zero(m, m);

  RealMatrix v0 = nullspace(f0, opts.nullspace_tol);
  RealMatrix kernel;
  if (gs.degeneracy > 1 && v0.cols() > 0) {
    RealMatrix z = nullspace(comm * v0, opts.nullspace_tol);
    kernel = (z.cols() > 0) ? orthonormal_columns(RealMatrix(v0 * z))
                            : RealMatrix(m, 0);
  } else {
    kernel = v0;
  }

  ResponseKernelResult result;
  result.method = "conditions";
  result.kernel_basis = matrix_to_columns(kernel);
  const double accept_tol = 1e-8;
  for (const auto& w : result.kernel_basis)
    result.basis_diagnostics.push_back(
        diagnose(w, set, gs, f0, comm, accept_tol));
  for (int j = 0; j < m; ++j) {
    RealVector ej = RealVector::Zero(m);
    ej(j) = 1.0;
    result.per_operator.push_back(diagnose(ej, set, gs, f0, comm, accept_tol));
  }
  return result;
}

ResponseKernelResult kernel_by_chi_nullspace(const TransitionMoments& tm,
                                             const std::vector<double>& s_samples,
                                             const KernelOptions& opts) {
  std::set<double> distinct(s_samples.begin(), s_samples.end());
  if (distinct.size() < 3)
    fail("too-few-samples", "need at least 3 distinct Laplace samples");
  for (double s : s_samples)
    if (s <= 0) fail("nonpositive-s", "Laplace samples must be positive");

  const int m = tm.n_ops();
  const int n = static_cast<int>(s_samples.size());
  RealMatrix stacked(2 * m * n, m);
  for (int a = 0; a < n; ++a) {
    Matrix chi(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) chi(i, j) = chi_laplace(tm, i, j, s_samples[a]);
    stacked.middleRows(2 * a * m, m) = chi.real();
    stacked.middleRows((2 * a + 1) * m, m) = chi.imag();
  }

  ResponseKernelResult result;
  result.method = "chi_nullspace";
  RealMatrix kernel = nullspace(stacked, opts.nullspace_tol);
  result.kernel_basis = matrix_to_columns(kernel);
  for (const auto& w : result.kernel_basis) {
    KernelDiagnostics diag;
    diag.coeffs = w;
    diag.residual_f0 = (stacked * w).norm();
    diag.accepted = true;
    result.basis_diagnostics.push_back(std::move(diag));
  }
  for (int j = 0; j < m; ++j) {
    KernelDiagnostics diag;
    diag.coeffs = RealVector::Zero(m);
    diag.coeffs(j) = 1.0;
    diag.residual_f0 = stacked.col(j).norm();
    diag.accepted = sine_to_span(diag.coeffs, kernel) < 1e-7;
    result.per_operator.push_back(std::move(diag));
  }
  return result;
}

KernelDiagnostics diagnose_candidate(const RealVector& w,
                                     const OperatorSet& set,
                                     const GroundStateSolution& gs,
                                     const KernelOptions& opts) {
  validate_set(set, gs.dim());
  if (w.size() != set.size())
    fail("dimension-mismatch", "coefficient vector does not match set");
  const RealMatrix f0 = f0_condition_matrix(set, gs);
  const RealMatrix comm = gs.degeneracy > 1
                              ? commutator_matrix(set, gs, opts)
                              : RealMatrix::Zero(set.size(), set.size());
  return diagnose(w, set, gs, f0, comm, 1e-8);
}

UniquenessReport verify_gs_uniqueness(const ManyBodyOperator& h,
                                      const GroundStateSolution& gs,
                                      const RealVector& kernel_vector,
                                      const OperatorSet& set,
                                      const FockSpace& space,
                                      double epsilon, unsigned seed) {
  if (gs.degeneracy > 1)
    fail("degenerate-ground-state",
         "static uniqueness check requires a non-degenerate ground state");
  validate_set(set, gs.dim());
  if (kernel_vector.size() != set.size())
    fail("dimension-mismatch", "kernel vector does not match operator set");

  const Matrix gamma0 = compute_1rdm(gs.psi0, space);
  auto perturbed_gamma = [&](const Matrix& l, double eps) {
    ManyBodyOperator hp{"h+eps*L", h.matrix + eps * l, std::nullopt};
    GroundStateSolution sol = solve_ground(hp);
    return compute_1rdm(sol.psi0, space);
  };

  Matrix l_kernel = Matrix::Zero(gs.dim(), gs.dim());
  for (int j = 0; j < set.size(); ++j)
    l_kernel += kernel_vector(j) * set[j].matrix;
  double lnorm = l_kernel.norm();
  if (lnorm > 0) l_kernel /= lnorm;

  // A direction orthogonal to the response kernel, drawn at random so the
  // check does not depend on a hand-picked operator.
  ResponseKernelResult kern = kernel_by_conditions(set, gs);
  RealMatrix kbasis = kern.basis_matrix();
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  RealVector wnk;
  for (int attempt = 0; attempt < 64; ++attempt) {
    RealVector cand(set.size());
    for (int j = 0; j < set.size(); ++j) cand(j) = gauss(rng);
    if (kbasis.cols() > 0)
      cand -= kbasis * (kbasis.transpose() * cand);
    if (cand.norm() > 1e-6) {
      wnk = cand.normalized();
      break;
    }
  }
  if (wnk.size() == 0)
    fail("invalid-argument", "operator set has no non-kernel direction");
  Matrix l_nk = Matrix::Zero(gs.dim(), gs.dim());
  for (int j = 0; j < set.size(); ++j) l_nk += wnk(j) * set[j].matrix;
  l_nk /= l_nk.norm();

  UniquenessReport rep;
  rep.kernel_delta = (perturbed_gamma(l_kernel, epsilon) - gamma0).norm();
  rep.nonkernel_delta = (perturbed_gamma(l_nk, epsilon) - gamma0).norm();
  rep.nonkernel_delta_half =
      (perturbed_gamma(l_nk, epsilon / 2) - gamma0).norm();
  rep.linear_ratio = rep.nonkernel_delta_half > 0
                         ? rep.nonkernel_delta / rep.nonkernel_delta_half
                         : 0.0;
  rep.kernel_unchanged = rep.kernel_delta < 1e-9;
  rep.nonkernel_changed = rep.nonkernel_delta > 1e-6 * epsilon;
  return rep;
}

}  // namespace respkern
