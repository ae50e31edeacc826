// Copyright 2026 The respkern Authors
// SPDX-License-Identifier: Apache-2.0

#include "respkern/propagate.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "respkern/numerics.hpp"

namespace respkern {

double default_time_step(const ManyBodyOperator& h0) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h0.matrix,
                                           Eigen::EigenvaluesOnly);
  double rho = es.eigenvalues().cwiseAbs().maxCoeff();
  return 0.05 / std::max(rho, 1e-12);
}

RealVector time_grid(const ManyBodyOperator& h0, double horizon,
                     double dt_cap) {
  double dt = default_time_step(h0);
  if (dt_cap > 0) dt = std::min(dt, dt_cap);
  int n = std::max(2, static_cast<int>(std::ceil(horizon / dt)) + 1);
  return RealVector::LinSpaced(n, 0.0, horizon);
}

Trajectory evolve_linear_response(const ManyBodyOperator& h0,
                                  const GroundStateSolution& gs,
                                  const Perturbation& pert,
                                  const OperatorSet& set,
                                  const RealVector& t_grid, double epsilon) {
  if (epsilon < 0 || epsilon > 0.1)
    fail("invalid-argument", "epsilon must lie in [0, 0.1]");
  if (pert.weights.size() != set.size())
    fail("dimension-mismatch", "weights do not match the operator set");
  const Eigen::Index n = t_grid.size();
  for (Eigen::Index k = 1; k < n; ++k)
    if (t_grid(k) <= t_grid(k - 1))
      fail("invalid-argument", "time grid must be strictly increasing");

  Matrix v = Matrix::Zero(gs.dim(), gs.dim());
  for (int j = 0; j < set.size(); ++j) v += pert.weights(j) * set[j].matrix;

  const double dt_max = default_time_step(h0);
  const Complex I(0, 1);
  Vector psi = gs.psi0;
  RealVector q0(set.size());
  for (int i = 0; i < set.size(); ++i)
    q0(i) = set[i].expectation(psi).real();

  Trajectory traj;
  traj.times = t_grid;
  traj.delta_q = RealMatrix::Zero(set.size(), n);
  traj.epsilon = epsilon;

  for (Eigen::Index k = 1; k < n; ++k) {
    const double t0 = t_grid(k - 1), t1 = t_grid(k);
    const int nsub = std::max(1, static_cast<int>(std::ceil((t1 - t0) / dt_max)));
    const double dt = (t1 - t0) / nsub;
    for (int sub = 0; sub < nsub; ++sub) {
      const double tm = t0 + (sub + 0.5) * dt;
      Matrix h = h0.matrix + (epsilon * pert.profile.eval(tm)) * v;
      Eigen::SelfAdjointEigenSolver<Matrix> es(h);
      Vector phases =
          (-I * dt * es.eigenvalues().array()).exp().matrix();
      psi = es.eigenvectors() *
            (phases.asDiagonal() * (es.eigenvectors().adjoint() * psi));
    }
    traj.max_norm_drift =
        std::max(traj.max_norm_drift, std::abs(psi.norm() - 1.0));
    if (traj.max_norm_drift > 1e-9)
      fail("step-too-large", "norm drift exceeded 1e-9");
    for (int i = 0; i < set.size(); ++i)
      traj.delta_q(i, k) = set[i].expectation(psi).real() - q0(i);
  }
  return traj;
}

}  // namespace respkern
