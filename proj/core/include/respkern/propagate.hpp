// Copyright 2026 The respkern Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "respkern/response.hpp"

namespace respkern {

/// Response curves delta Q_i(t) from a real-time run.
struct Trajectory {
  RealVector times;
  RealMatrix delta_q;  // n_ops x n_times
  double epsilon = 0;
  double max_norm_drift = 0;
};

/// Time step keeping dt * (spectral radius of H0) <= 0.05.
double default_time_step(const ManyBodyOperator& h0);

/// Uniform grid 0..horizon with the default step (or finer when requested).
RealVector time_grid(const ManyBodyOperator& h0, double horizon,
                     double dt_cap = 0.0);

/// Propagates |Psi(t)> under H0 + eps f(t) sum_j w_j Q_j with per-step exact
/// exponentials of the midpoint Hamiltonian (global error O(dt^2)) and
/// returns delta Q_i(t) = <Q_i>(t) - <Q_i>(0). The initial state is gs.psi0.
/// Errors: step-too-large when the norm drifts beyond 1e-9.
Trajectory evolve_linear_response(const ManyBodyOperator& h0,
                                  const GroundStateSolution& gs,
                                  const Perturbation& pert,
                                  const OperatorSet& set,
                                  const RealVector& t_grid, double epsilon);

}  // namespace respkern
