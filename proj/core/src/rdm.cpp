// Copyright 2026 The respkern Authors
// SPDX-License-Identifier: Apache-2.0

#include "respkern/rdm.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "respkern/numerics.hpp"

namespace respkern {

Matrix compute_1rdm(const Vector& state, const FockSpace& space) {
  const auto dim = static_cast<Eigen::Index>(space.size());
  if (state.size() != dim)
    fail("dimension-mismatch", "state does not match the sector dimension");
  const int m = space.n_orbitals();
  Matrix gamma = Matrix::Zero(m, m);
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (state(j) == Complex(0, 0)) continue;
    const Determinant dj = space.det(j);
    for (int k : dj.occupied_list()) {
      for (int l = 0; l < m; ++l) {
        auto res = apply_excitation(dj, l, k);  // a+_l a_k
        if (!res) continue;
        int i = space.lookup(res->det);
        gamma(k, l) += std::conj(state(i)) * double(res->sign) * state(j);
      }
    }
  }
  return gamma;
}

NaturalSpectrum natural_orbitals(const Matrix& gamma, double tol_pin,
                                 double tol_deg) {
  if (!is_hermitian(gamma, 1e-10 * std::max(1.0, gamma.norm())))
    fail("non-hermitian-input", "1RDM is not hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(gamma);
  const int m = static_cast<int>(gamma.rows());

  NaturalSpectrum nos;
  nos.occupations = es.eigenvalues().reverse();
  nos.orbitals = es.eigenvectors().rowwise().reverse();
  for (int k = 0; k < m; ++k) {
    double n = nos.occupations(k);
    if (std::abs(n - 1.0) <= tol_pin)
      nos.pinned_one.push_back(k);
    else if (std::abs(n) <= tol_pin)
      nos.pinned_zero.push_back(k);
    else
      nos.fractional.push_back(k);
  }
  int k = 0;
  while (k < m) {
    std::vector<int> cluster{k};
    while (k + 1 < m &&
           std::abs(nos.occupations(k) - nos.occupations(k + 1)) <= tol_deg) {
      cluster.push_back(++k);
    }
    nos.clusters.push_back(std::move(cluster));
    ++k;
  }
  return nos;
}

namespace {

/// gamma_{k,l} = a+_l a_k over NO columns k, l expressed as a site-basis
/// one-body coefficient matrix, u = phi_l phi_k^dagger.
OneBodyMatrix no_transition_matrix(const NaturalSpectrum& nos, int k, int l) {
  return nos.orbitals.col(l) * nos.orbitals.col(k).adjoint();
}

}  // namespace

std::vector<GammaActionEntry> gamma_action_classify(
    const GroundStateSolution& gs, const NaturalSpectrum& nos,
    const FockSpace& space) {
  const int m = nos.n_orbitals();
  std::vector<GammaActionEntry> table;
  table.reserve(static_cast<std::size_t>(m) * m);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      ManyBodyOperator g = build_one_body(
          space, no_transition_matrix(nos, k, l), "gamma");
      Vector acted = g.matrix * gs.psi0;
      GammaActionEntry e;
      e.k = k;
      e.l = l;
      e.action_norm = acted.norm();
      if (e.action_norm < 1e-10) {
        e.kind = GammaActionEntry::Kind::zero;
      } else {
        Complex lam = gs.psi0.dot(acted);
        e.eigenvalue = lam;
        e.eigen_residual = (acted - lam * gs.psi0).norm();
        e.kind = (e.eigen_residual < 1e-10)
                     ? GammaActionEntry::Kind::eigenstate
                     : GammaActionEntry::Kind::not_eigenstate;
      }
      table.push_back(e);
    }
  }
  return table;
}

namespace {

/// Antisymmetric coefficient matrix B with |Psi> = 1/2 sum_pq B_pq a+_p a+_q.
Matrix pair_coefficient_matrix(const Vector& state, const FockSpace& space) {
  const int m = space.n_orbitals();
  Matrix b = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(space.size()); ++i) {
    auto occ = space.det(i).occupied_list();  // p < q, |det> = a+_p a+_q |>
    b(occ[0], occ[1]) = state(i);
    b(occ[1], occ[0]) = -state(i);
  }
  return b;
}

Vector paired_two_orbital_state(const Matrix& orbitals, int k, int kbar,
                                const FockSpace& space) {
  const auto dim = static_cast<Eigen::Index>(space.size());
  Vector v = Vector::Zero(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    auto occ = space.det(i).occupied_list();
    int p = occ[0], q = occ[1];
    v(i) = orbitals(p, k) * orbitals(q, kbar) -
           orbitals(q, k) * orbitals(p, kbar);
  }
  return v;
}

}  // namespace

TwoElectronExpansion two_electron_expansion(const Vector& state,
                                            const FockSpace& space) {
  if (space.n_particles() != 2)
    fail("not-two-electron", "pair expansion requires exactly two particles");
  const auto dim = static_cast<Eigen::Index>(space.size());
  if (state.size() != dim)
    fail("dimension-mismatch", "state does not match the sector dimension");

  TwoElectronExpansion exp;
  exp.spectrum = natural_orbitals(compute_1rdm(state, space));
  Matrix& orbitals = exp.spectrum.orbitals;

  Matrix b = pair_coefficient_matrix(state, space);
  // NO-basis coefficients, B = U Btilde U^T.
  Matrix bt = orbitals.adjoint() * b * orbitals.conjugate();

  // Pair extraction inside each degenerate occupation cluster. The block is
  // antisymmetric. A fully canonical block (one significant entry per row)
  // is read off directly, keeping the incoming NO phases and complex
  // amplitudes. Otherwise the cluster orbitals are re-rotated onto the
  // pairing directions (Youla-style), which makes those amplitudes real.
  const double scale = std::max(bt.cwiseAbs().maxCoeff(), 1e-300);
  for (const auto& cluster : exp.spectrum.clusters) {
    const int c = static_cast<int>(cluster.size());
    Matrix a(c, c);
    for (int i = 0; i < c; ++i)
      for (int j = 0; j < c; ++j) a(i, j) = bt(cluster[i], cluster[j]);
    if (a.cwiseAbs().maxCoeff() < 1e-12 * scale) continue;

    bool canonical = true;
    for (int i = 0; i < c && canonical; ++i) {
      int significant = 0;
      for (int j = 0; j < c; ++j)
        if (std::abs(a(i, j)) > 1e-10 * scale) ++significant;
      if (significant > 1) canonical = false;
    }

    if (canonical) {
      for (int i = 0; i < c; ++i)
        for (int j = i + 1; j < c; ++j)
          if (std::abs(a(i, j)) > 1e-10 * scale) {
            exp.pairs.emplace_back(cluster[i], cluster[j]);
            exp.amplitudes.push_back(a(i, j));
          }
      continue;
    }

    Matrix cluster_cols(orbitals.rows(), c);
    for (int i = 0; i < c; ++i) cluster_cols.col(i) = orbitals.col(cluster[i]);
    Matrix extracted(c, 0);
    std::vector<double> sigmas;
    while (extracted.cols() + 1 < c + 1) {
      const int r = c - static_cast<int>(extracted.cols());
      if (r <= 0) break;
      // Orthonormal complement of the extracted directions.
      Matrix pc = Matrix::Identity(c, c);
      if (extracted.cols() > 0)
        pc -= extracted * extracted.adjoint();
      Eigen::JacobiSVD<Matrix> svd(pc, Eigen::ComputeFullU);
      Matrix comp = svd.matrixU().leftCols(r);
      Matrix ar = comp.adjoint() * a * comp.conjugate();
      int bj = -1;
      double best = 0;
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          if (std::abs(ar(i, j)) > best) {
            best = std::abs(ar(i, j));
            bj = j;
          }
      if (best < 1e-12 * scale) break;
      Vector v = comp.col(bj);
      Vector w = a * v.conjugate();
      // Safety orthogonalization; exact when the cluster block is clean.
      for (Eigen::Index k = 0; k < extracted.cols(); ++k)
        w -= extracted.col(k) * extracted.col(k).dot(w);
      w -= v * v.dot(w);
      double sigma = w.norm();
      if (sigma < 1e-12 * scale) break;
      w /= sigma;
      Matrix grown(c, extracted.cols() + 2);
      grown.leftCols(extracted.cols()) = extracted;
      grown.col(extracted.cols()) = w;
      grown.col(extracted.cols() + 1) = v;
      extracted = std::move(grown);
      sigmas.push_back(sigma);
    }
    // Reassign the cluster slots: extracted pair directions first, then the
    // untouched complement, so the orbital matrix stays unitary.
    const int npairs = static_cast<int>(sigmas.size());
    Matrix pc = Matrix::Identity(c, c) - extracted * extracted.adjoint();
    Eigen::JacobiSVD<Matrix> svd(pc, Eigen::ComputeFullU);
    Matrix rest = svd.matrixU().leftCols(c - 2 * npairs);
    for (int p = 0; p < npairs; ++p) {
      orbitals.col(cluster[2 * p]) = cluster_cols * extracted.col(2 * p);
      orbitals.col(cluster[2 * p + 1]) = cluster_cols * extracted.col(2 * p + 1);
      exp.pairs.emplace_back(cluster[2 * p], cluster[2 * p + 1]);
      exp.amplitudes.push_back(sigmas[static_cast<std::size_t>(p)]);
    }
    for (int i = 2 * npairs; i < c; ++i)
      orbitals.col(cluster[i]) = cluster_cols * rest.col(i - 2 * npairs);
  }

  // Fix the overall phase: largest amplitude real positive, absorbed into
  // the partner orbital so the represented state is unchanged.
  if (!exp.amplitudes.empty()) {
    std::size_t imax = 0;
    for (std::size_t i = 1; i < exp.amplitudes.size(); ++i)
      if (std::abs(exp.amplitudes[i]) > std::abs(exp.amplitudes[imax]))
        imax = i;
    Complex cmax = exp.amplitudes[imax];
    if (std::abs(cmax) > 0 && std::abs(cmax.imag()) > 0) {
      Complex phase = cmax / std::abs(cmax);
      orbitals.col(exp.pairs[imax].second) *= phase;
      for (std::size_t i = 0; i < exp.pairs.size(); ++i)
        if (exp.pairs[i].second == exp.pairs[imax].second)
          exp.amplitudes[i] /= phase;
    }
    if (exp.amplitudes[imax].real() < 0) {
      orbitals.col(exp.pairs[imax].second) *= -1.0;
      exp.amplitudes[imax] *= -1.0;
    }
  }

  Vector rebuilt = Vector::Zero(dim);
  for (std::size_t i = 0; i < exp.pairs.size(); ++i)
    rebuilt += exp.amplitudes[i] * paired_two_orbital_state(
                                       orbitals, exp.pairs[i].first,
                                       exp.pairs[i].second, space);
  exp.reconstruction_error = (state - rebuilt).norm();
  if (exp.reconstruction_error > 1e-9)
    fail("non-paired-structure",
         "reconstruction error " + std::to_string(exp.reconstruction_error));
  return exp;
}

namespace {

PairKernelOp make_pair_op(const std::string& label, const Matrix& u_no,
                          const NaturalSpectrum& nos, const Vector& state,
                          const FockSpace& space) {
  PairKernelOp op;
  op.label = label;
  op.u = nos.orbitals * u_no * nos.orbitals.adjoint();
  ManyBodyOperator l = build_one_body(space, op.u, label);
  op.action_norm = (l.matrix * state).norm();
  return op;
}

}  // namespace

std::vector<PairKernelOp> build_pair_kernel_ops(const TwoElectronExpansion& exp,
                                                const Vector& state,
                                                const FockSpace& space,
                                                double amp_tol) {
  const int m = exp.spectrum.n_orbitals();
  std::vector<PairKernelOp> ops;
  for (std::size_t i = 0; i < exp.pairs.size(); ++i) {
    auto [k, kbar] = exp.pairs[i];
    std::string tag = "pair" + std::to_string(i);
    Matrix ux = Matrix::Zero(m, m);
    ux(kbar, k) = 1.0;
    ux(k, kbar) = 1.0;
    Matrix uy = Matrix::Zero(m, m);
    uy(kbar, k) = Complex(0, 1);
    uy(k, kbar) = Complex(0, -1);
    Matrix uz = Matrix::Zero(m, m);
    uz(k, k) = 1.0;
    uz(kbar, kbar) = -1.0;
    ops.push_back(make_pair_op(tag + "_x", ux, exp.spectrum, state, space));
    ops.push_back(make_pair_op(tag + "_y", uy, exp.spectrum, state, space));
    ops.push_back(make_pair_op(tag + "_z", uz, exp.spectrum, state, space));
  }
  for (std::size_t a = 0; a < exp.pairs.size(); ++a) {
    for (std::size_t bidx = a + 1; bidx < exp.pairs.size(); ++bidx) {
      double da = std::abs(exp.amplitudes[a]);
      double db = std::abs(exp.amplitudes[bidx]);
      if (da < amp_tol || db < amp_tol) continue;
      if (std::abs(da - db) > amp_tol) continue;
      auto locked = build_phase_locked_pair_ops(exp, static_cast<int>(a),
                                                static_cast<int>(bidx), state,
                                                space);
      ops.insert(ops.end(), locked.begin(), locked.end());
    }
  }
  for (const auto& op : ops)
    if (op.action_norm > 1e-8)
      fail("pair-kernel-verification",
           "operator '" + op.label + "' does not annihilate the state");
  return ops;
}

std::vector<PairKernelOp> build_phase_locked_pair_ops(
    const TwoElectronExpansion& exp, int pair_a, int pair_b,
    const Vector& state, const FockSpace& space) {
  const int m = exp.spectrum.n_orbitals();
  auto [o1, o1b] = exp.pairs[pair_a];
  auto [o2, o2b] = exp.pairs[pair_b];
  const Complex p = exp.relative_phase(pair_a, pair_b);  // c_a / c_b phase
  const Complex I(0, 1);
  std::string tag = "lock" + std::to_string(pair_a) + std::to_string(pair_b);
  std::vector<PairKernelOp> ops;

  // v (gamma_{1,2} - p gamma_{2bar,1bar}) + h.c., for v = 1 and v = i.
  Matrix u1 = Matrix::Zero(m, m);
  u1(o2, o1) = 1.0;
  u1(o1b, o2b) = -p;
  u1(o1, o2) = 1.0;
  u1(o2b, o1b) = -std::conj(p);
  ops.push_back(make_pair_op(tag + "_1re", u1, exp.spectrum, state, space));

  Matrix u2 = Matrix::Zero(m, m);
  u2(o2, o1) = I;
  u2(o1b, o2b) = -I * p;
  u2(o1, o2) = -I;
  u2(o2b, o1b) = I * std::conj(p);
  ops.push_back(make_pair_op(tag + "_1im", u2, exp.spectrum, state, space));

  // v (gamma_{1,2bar} + p gamma_{2,1bar}) + h.c., for v = 1 and v = i.
  Matrix u3 = Matrix::Zero(m, m);
  u3(o2b, o1) = 1.0;
  u3(o1b, o2) = p;
  u3(o1, o2b) = 1.0;
  u3(o2, o1b) = std::conj(p);
  ops.push_back(make_pair_op(tag + "_2re", u3, exp.spectrum, state, space));

  Matrix u4 = Matrix::Zero(m, m);
  u4(o2b, o1) = I;
  u4(o1b, o2) = I * p;
  u4(o1, o2b) = -I;
  u4(o2, o1b) = -I * std::conj(p);
  ops.push_back(make_pair_op(tag + "_2im", u4, exp.spectrum, state, space));
  return ops;
}

OccupationConditionReport occupation_condition_check(const OneBodyMatrix& u,
                                                     const NaturalSpectrum& nos,
                                                     double tol,
                                                     bool u_in_site_basis) {
  const int m = nos.n_orbitals();
  if (u.rows() != m || u.cols() != m)
    fail("dimension-mismatch", "operator matrix does not match NO count");
  Matrix ut = u_in_site_basis ? Matrix(nos.orbitals.adjoint() * u * nos.orbitals)
                              : Matrix(u);
  OccupationConditionReport rep;
  rep.residuals = RealMatrix::Zero(m, m);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      rep.residuals(k, l) =
          std::abs((nos.occupations(l) - nos.occupations(k)) * ut(k, l));
  rep.max_residual = rep.residuals.maxCoeff();
  rep.pass = rep.max_residual <= tol;
  return rep;
}

}  // namespace respkern
