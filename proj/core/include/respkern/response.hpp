// Copyright 2026 The respkern Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "respkern/fock.hpp"
#include "respkern/model.hpp"

namespace respkern {

/// Ordered set of hermitian observables sharing one Hilbert space.
struct OperatorSet {
  std::vector<ManyBodyOperator> ops;

  int size() const { return static_cast<int>(ops.size()); }
  const ManyBodyOperator& operator[](int i) const { return ops[i]; }
  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    out.reserve(ops.size());
    for (const auto& op : ops) out.push_back(op.label);
    return out;
  }
};

/// Lehmann data q(i, K) = <Psi0| Q_i |Psi_K> together with the excitation
/// energies Omega_K and the ground-state multiplicity D.
struct TransitionMoments {
  Matrix q;  // n_ops x dim
  RealVector omega;
  int degeneracy = 1;

  int n_ops() const { return static_cast<int>(q.rows()); }
  Eigen::Index dim() const { return q.cols(); }
};

TransitionMoments transition_moments(const OperatorSet& set,
                                     const GroundStateSolution& gs);

/// Retarded response chi_ij(t) = i theta(t) sum_K exp(i Omega_K t)
/// conj(q_i^K) q_j^K + c.c.; identically zero for t < 0.
Complex chi_time(const TransitionMoments& tm, int i, int j, double t);

/// Closed-form Laplace transform of chi_time on the positive real axis.
Complex chi_laplace(const TransitionMoments& tm, int i, int j, double s);

enum class ProfileKind { exponential, step, damped_cosine };

/// Time profile f(t) with a closed-form Laplace transform.
struct Profile {
  ProfileKind kind = ProfileKind::exponential;
  double rate = 1.0;  // decay constant a
  double freq = 0.0;  // cosine frequency

  double eval(double t) const;
  double laplace(double s) const;
};

/// Separable real perturbation delta v_j(t) = weights_j * f(t).
struct Perturbation {
  RealVector weights;
  Profile profile;
};

struct PowerIdentity {
  double lhs = 0;       // sum_i L[dv_i](s) L[dQ_i](s), via the chi route
  double rhs = 0;       // -2 sum_K Omega_K |L[a_K]|^2 / (s^2 + Omega_K^2)
  double residual = 0;  // |lhs - rhs|
};

/// Both sides of the Laplace-domain power identity, computed independently
/// (lhs through chi_laplace, rhs through a_K = sum_j q_j^K w_j).
PowerIdentity power_identity_check(const TransitionMoments& tm,
                                   const Perturbation& pert, double s);

/// Per-unit-strength response curves from the Lehmann side,
/// dQ_i(t) = sum_j int_0^t chi_ij(t - tau) w_j f(tau) dtau,
/// evaluated by the trapezoid rule on the given grid (must be uniform).
RealMatrix lehmann_convolution(const TransitionMoments& tm,
                               const Perturbation& pert,
                               const RealVector& t_grid);

struct KernelOptions {
  /// Relative singular-value cutoff for null spaces.
  double nullspace_tol = 1e-8;
  /// Ground-state expectations <Psi0|[Q_i, Q_j]|Psi0> supplied at the
  /// operator level. When absent they are computed from the matrix algebra.
  /// Needed when the matrices are projections of operators on a larger
  /// space, where matrix products misrepresent operator products.
  std::optional<Matrix> commutator_expectations;
};

/// Diagnostics for one real coefficient vector w (an operator combination
/// L = sum_j w_j Q_j).
struct KernelDiagnostics {
  RealVector coeffs;
  double residual_f0 = 0;    // || <Psi_K| L |Psi0> ||, K >= D
  double residual_comm = 0;  // max_i |<Psi0|[Q_i, L]|Psi0>| (D > 1)
  std::optional<double> eigenvalue;  // l with L|Psi0> = l|Psi0> (D = 1)
  double eigen_residual = 0;         // || L psi0 - l psi0 || (D = 1)
  Vector l_components;               // <Psi0| L |Psi_K> for K < D
  bool accepted = false;
};

struct ResponseKernelResult {
  std::string method;  // "conditions" or "chi_nullspace"
  std::vector<RealVector> kernel_basis;  // orthonormal coefficient vectors
  std::vector<KernelDiagnostics> basis_diagnostics;
  std::vector<KernelDiagnostics> per_operator;  // canonical directions e_j

  int dimension() const { return static_cast<int>(kernel_basis.size()); }
  RealMatrix basis_matrix() const {
    if (kernel_basis.empty()) return RealMatrix(0, 0);
    RealMatrix b(kernel_basis[0].size(), kernel_basis.size());
    for (std::size_t i = 0; i < kernel_basis.size(); ++i)
      b.col(static_cast<Eigen::Index>(i)) = kernel_basis[i];
    return b;
  }
};

/// Kernel of the response function from the zero-response conditions:
/// the null space of w -> {<Psi_K| sum_j w_j Q_j |Psi0>}_{K>=D} (real and
/// imaginary parts stacked), restricted for degenerate ground states by the
/// commutator conditions <Psi0|[Q_i, L]|Psi0> = 0 for all i.
ResponseKernelResult kernel_by_conditions(const OperatorSet& set,
                                          const GroundStateSolution& gs,
                                          const KernelOptions& opts = {});

/// Independent route: real null space of the chi(s) matrices stacked over
/// several Laplace samples. Errors: too-few-samples.
ResponseKernelResult kernel_by_chi_nullspace(const TransitionMoments& tm,
                                             const std::vector<double>& s_samples,
                                             const KernelOptions& opts = {});

/// Diagnostics for an arbitrary coefficient vector against a ground state.
KernelDiagnostics diagnose_candidate(const RealVector& w,
                                     const OperatorSet& set,
                                     const GroundStateSolution& gs,
                                     const KernelOptions& opts = {});

struct UniquenessReport {
  double kernel_delta = 0;     // ||gamma(H + eps L) - gamma(H)||_F
  double nonkernel_delta = 0;  // same for the random non-kernel direction
  double nonkernel_delta_half = 0;  // at eps/2, for the linearity ratio
  double linear_ratio = 0;          // nonkernel_delta / nonkernel_delta_half
  bool kernel_unchanged = false;
  bool nonkernel_changed = false;
};

/// Static cross-check for non-degenerate ground states: re-solves
/// H + eps * L for a kernel vector (1RDM must not move) and for a random
/// non-kernel direction (1RDM must move linearly in eps).
/// Errors: degenerate-ground-state.
UniquenessReport verify_gs_uniqueness(const ManyBodyOperator& h,
                                      const GroundStateSolution& gs,
                                      const RealVector& kernel_vector,
                                      const OperatorSet& set,
                                      const FockSpace& space,
                                      double epsilon = 1e-3,
                                      unsigned seed = 12345);

}  // namespace respkern
