// Copyright 2026 The respkern Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "respkern/fock.hpp"
#include "respkern/model.hpp"

namespace respkern {

/// gamma_kl = <Psi| a+_l a_k |Psi>; hermitian, positive semidefinite,
/// trace N.
Matrix compute_1rdm(const Vector& state, const FockSpace& space);

/// Natural-orbital decomposition of a 1RDM with pinning and degeneracy
/// bookkeeping. Occupations are sorted descending; orbitals are the unitary
/// eigenvector columns in the same order.
struct NaturalSpectrum {
  RealVector occupations;
  Matrix orbitals;
  std::vector<int> pinned_one;   // n_k = 1 within tol_pin
  std::vector<int> pinned_zero;  // n_k = 0 within tol_pin
  std::vector<int> fractional;
  std::vector<std::vector<int>> clusters;  // degenerate groups within tol_deg

  int n_orbitals() const { return static_cast<int>(occupations.size()); }
};

NaturalSpectrum natural_orbitals(const Matrix& gamma, double tol_pin = 1e-8,
                                 double tol_deg = 1e-8);

/// Case analysis of gamma_{k,l} |Psi0> = a+_l a_k |Psi0> in the NO basis.
struct GammaActionEntry {
  int k = 0, l = 0;
  enum class Kind { zero, eigenstate, not_eigenstate } kind = Kind::zero;
  Complex eigenvalue;     // when kind == eigenstate
  double action_norm = 0;
  double eigen_residual = 0;  // || gamma_kl psi - <psi|gamma_kl psi> psi ||
};

std::vector<GammaActionEntry> gamma_action_classify(
    const GroundStateSolution& gs, const NaturalSpectrum& nos,
    const FockSpace& space);

/// Two-electron state over NO pairs, |Psi> = sum_k c_k a+_k a+_kbar |>.
/// Pair indices refer to columns of `spectrum.orbitals`, which may have been
/// re-rotated inside degenerate occupation clusters to expose the pairing.
/// The overall phase is fixed so the largest amplitude is real positive.
struct TwoElectronExpansion {
  std::vector<Complex> amplitudes;           // c_k, |c_k|^2 = n_k
  std::vector<std::pair<int, int>> pairs;    // (k, kbar)
  NaturalSpectrum spectrum;
  double reconstruction_error = 0;

  Complex relative_phase(int a, int b) const {  // c_a / c_b as a unit phase
    Complex r = amplitudes[a] / amplitudes[b];
    return r / std::abs(r);
  }
};

/// Errors: not-two-electron, non-paired-structure.
TwoElectronExpansion two_electron_expansion(const Vector& state,
                                            const FockSpace& space);

/// The three hermitian combinations of gamma_{k,kbar}, gamma_{kbar,k} and
/// gamma_{k,k} - gamma_{kbar,kbar} for every pair, plus, for every pair of
/// pairs with degenerate amplitude magnitude, the four phase-locked
/// potentials built with exp(i alpha) = c_a / c_b. Every returned matrix is
/// verified to annihilate the state. Coefficients are in the site basis.
struct PairKernelOp {
  std::string label;
  OneBodyMatrix u;        // site-basis coefficients
  double action_norm = 0; // || L psi || after verification
};

std::vector<PairKernelOp> build_pair_kernel_ops(const TwoElectronExpansion& exp,
                                                const Vector& state,
                                                const FockSpace& space,
                                                double amp_tol = 1e-8);

/// The four phase-locked cross-pair potentials for pairs a and b, built
/// regardless of amplitude degeneracy. They annihilate the state only when
/// |c_a| = |c_b|; exposed so the non-degenerate failure mode can be
/// demonstrated.
std::vector<PairKernelOp> build_phase_locked_pair_ops(
    const TwoElectronExpansion& exp, int pair_a, int pair_b,
    const Vector& state, const FockSpace& space);

/// Residuals of the degenerate-case necessary condition
/// (n_l - n_k) u_kl = 0 in the NO basis.
struct OccupationConditionReport {
  double max_residual = 0;
  RealMatrix residuals;
  bool pass = false;
};

OccupationConditionReport occupation_condition_check(const OneBodyMatrix& u,
                                                     const NaturalSpectrum& nos,
                                                     double tol = 1e-10,
                                                     bool u_in_site_basis = true);

}  // namespace respkern
