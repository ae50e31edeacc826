// Copyright 2026 The respkern Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "respkern/fock.hpp"
#include "respkern/symops.hpp"

namespace respkern {

enum class ModelKind { hubbard_chain, pairing, integral_file };

struct ModelSpec {
  ModelKind kind = ModelKind::hubbard_chain;
  int sites = 2;
  double t = 1.0;       // hopping (hubbard) or level spacing (pairing)
  double u = 0.0;       // on-site repulsion (hubbard) or pair-hopping strength
  double jex = 0.0;     // exchange splitting -jex * S^2 (pairing only)
  bool periodic = false;
  int filling = -1;     // electron count; -1 means half filling
  std::string path;     // integral file
  double tol_deg = 1e-8;
};

struct Model {
  ModelSpec spec;
  FockSpace space;
  SpinLayout layout;
  ManyBodyOperator hamiltonian;
};

/// Open or periodic Hubbard chain,
/// H = -t sum_<ij>,sigma (a+_i a_j + h.c.) + U sum_i n_iu n_id.
Model build_hubbard(const ModelSpec& spec);

/// Level model with attractive pair hopping and optional exchange,
/// H = sum_i eps_i n_i - U sum_ij b+_i b_j - jex S^2, eps_i = t * i,
/// b+_i = a+_{i,up} a+_{i,dn}. With degenerate levels the two-electron
/// ground state has equal natural amplitudes; jex > 0 makes the ground
/// state a spin triplet.
Model build_pairing(const ModelSpec& spec);

/// Hamiltonian from a line-oriented integral file; see README for the
/// format. Errors: parse-error (with line number), non-hermitian-integrals.
Model load_integrals(const std::string& path, std::size_t cap = FockSpace::kDefaultCap);

Model build_model(const ModelSpec& spec);

/// Single named one-body operator in the same file format (one-body
/// entries only). Returns the coefficient matrix and the orbital count.
std::pair<OneBodyMatrix, int> load_one_body_operator(const std::string& path);

/// Full spectrum of a hermitian operator with degeneracy bookkeeping.
/// omega(K) = E_K - E_0 >= 0; the first `degeneracy` values are below the
/// degeneracy tolerance. psi0 is the selected initial state; eigenvector
/// column 0 always equals psi0 (the degenerate block is rotated when a
/// custom psi0 is installed).
struct GroundStateSolution {
  RealVector energies;
  Matrix vectors;
  int degeneracy = 1;
  RealVector omega;
  Vector psi0;

  double ground_energy() const { return energies(0); }
  Eigen::Index dim() const { return vectors.rows(); }
};

struct SolveOptions {
  /// Degeneracy tolerance in units of |E0| + 1.
  double tol_deg = 1e-8;
  /// Optional initial state; must lie in the degenerate subspace.
  std::optional<Vector> psi0;
};

GroundStateSolution solve_ground(const ManyBodyOperator& h,
                                 const SolveOptions& opts = {});

/// Re-selects the initial state inside the degenerate subspace and rotates
/// the degenerate eigenvector block so that column 0 is psi0.
/// Errors: psi0-outside-degenerate-subspace.
void set_initial_state(GroundStateSolution& gs, const Vector& psi0,
                       double tol = 1e-8);

/// Initial state with a definite Sz eigenvalue inside the degenerate
/// subspace (used for spin-multiplet ground states).
void set_initial_state_sz(GroundStateSolution& gs, const ManyBodyOperator& sz,
                          double m_value, double tol = 1e-6);

}  // namespace respkern
