// Copyright 2026 The respkern Authors
// SPDX-License-Identifier: Apache-2.0

#include "respkern/model.hpp"

#include <Eigen/Eigenvalues>
#include <fstream>
#include <sstream>

#include "respkern/numerics.hpp"

namespace respkern {

namespace {

int electrons(const ModelSpec& spec) {
  return spec.filling >= 0 ? spec.filling : spec.sites;
}

}  // namespace

Model build_hubbard(const ModelSpec& spec) {
  if (spec.sites < 2) fail("invalid-argument", "hubbard chain needs >= 2 sites");
  if (spec.periodic && spec.sites < 3)
    fail("invalid-argument", "periodic ring needs >= 3 sites");
  const SpinLayout layout = SpinLayout::blocked(spec.sites);
  const int m = layout.n_orbitals();
  FockSpace space = FockSpace::enumerate(m, electrons(spec));

  OneBodyMatrix kin = OneBodyMatrix::Zero(m, m);
  const int nbonds = spec.periodic ? spec.sites : spec.sites - 1;
  for (int b = 0; b < nbonds; ++b) {
    int i = b, j = (b + 1) % spec.sites;
    for (int orb_i : {layout.up(i), layout.down(i)}) {
      int orb_j = layout.is_up(orb_i) ? layout.up(j) : layout.down(j);
      kin(orb_i, orb_j) += -spec.t;
      kin(orb_j, orb_i) += -spec.t;
    }
  }
  Tensor4 w(m);
  for (int i = 0; i < spec.sites; ++i) {
    int a = layout.up(i), b = layout.down(i);
    w(a, b, a, b) = spec.u;
    w(b, a, b, a) = spec.u;
  }
  ManyBodyOperator h_kin = build_one_body(space, kin, "kinetic");
  ManyBodyOperator h_int = build_two_body(space, w, "interaction");
  ManyBodyOperator h{"hubbard", h_kin.matrix + h_int.matrix, std::nullopt};
  return Model{spec, std::move(space), layout, std::move(h)};
}

Model build_pairing(const ModelSpec& spec) {
  if (spec.sites < 2) fail("invalid-argument", "pairing model needs >= 2 levels");
  const SpinLayout layout = SpinLayout::blocked(spec.sites);
  const int m = layout.n_orbitals();
  FockSpace space = FockSpace::enumerate(m, electrons(spec));

  OneBodyMatrix eps = OneBodyMatrix::Zero(m, m);
  for (int i = 0; i < spec.sites; ++i) {
    eps(layout.up(i), layout.up(i)) = spec.t * i;
    eps(layout.down(i), layout.down(i)) = spec.t * i;
  }
  Tensor4 w(m);
  for (int i = 0; i < spec.sites; ++i) {
    for (int j = 0; j < spec.sites; ++j) {
      // -U b+_i b_j with b+_i = a+_{i,up} a+_{i,dn}
      w(layout.up(i), layout.down(i), layout.up(j), layout.down(j)) += -spec.u;
      w(layout.down(i), layout.up(i), layout.down(j), layout.up(j)) += -spec.u;
    }
  }
  ManyBodyOperator h_eps = build_one_body(space, eps, "levels");
  ManyBodyOperator h_pair = build_two_body(space, w, "pairing");
  Matrix hmat = h_eps.matrix + h_pair.matrix;
  if (spec.jex != 0.0) {
    SpinOperators s = spin_ops(space, layout);
    hmat -= spec.jex * s_squared(s).matrix;
  }
  ManyBodyOperator h{"pairing", std::move(hmat), std::nullopt};
  return Model{spec, std::move(space), layout, std::move(h)};
}

namespace {

struct IntegralData {
  int norb = 0;
  int nelec = 0;
  double core = 0.0;
  OneBodyMatrix h;
  Tensor4 w;
};

IntegralData parse_integral_file(const std::string& path, bool one_body_only) {
  std::ifstream in(path);
  if (!in) fail("parse-error", "cannot open '" + path + "'");
  std::string line;
  int lineno = 0;
  IntegralData data;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    if (!have_header) {
      std::string k1, k2;
      int m = 0, n = 0;
      if (!(ss >> k1)) continue;  // blank line before header
      if (!(ss >> m >> k2 >> n) || k1 != "NORB" || k2 != "NELEC" || m <= 0 ||
          n < 0)
        fail("parse-error", "line " + std::to_string(lineno) +
                                ": expected 'NORB <M> NELEC <N>'");
      data.norb = m;
      data.nelec = n;
      data.h = OneBodyMatrix::Zero(m, m);
      data.w = Tensor4(m);
      have_header = true;
      continue;
    }
    int p, q, r, s;
    double value;
    if (!(ss >> p)) continue;  // blank line
    if (!(ss >> q >> r >> s >> value))
      fail("parse-error",
           "line " + std::to_string(lineno) + ": expected 'p q r s value'");
    std::string trailing;
    if (ss >> trailing)
      fail("parse-error",
           "line " + std::to_string(lineno) + ": trailing token '" + trailing + "'");
    auto check_idx = [&](int idx) {
      if (idx < 1 || idx > data.norb)
        fail("parse-error", "line " + std::to_string(lineno) +
                                ": orbital index " + std::to_string(idx) +
                                " out of range 1.." + std::to_string(data.norb));
    };
    if (q == 0 && r == 0 && s == 0) {
      data.core += value;
    } else if (r == 0 && s == 0) {
      check_idx(p);
      check_idx(q);
      data.h(p - 1, q - 1) = value;
    } else {
      if (one_body_only)
        fail("parse-error", "line " + std::to_string(lineno) +
                                ": two-body entry in a one-body operator file");
      check_idx(p);
      check_idx(q);
      check_idx(r);
      check_idx(s);
      data.w(p - 1, q - 1, r - 1, s - 1) = value;
    }
  }
  if (!have_header) fail("parse-error", "missing 'NORB <M> NELEC <N>' header");
  if (!is_hermitian(data.h, 1e-12))
    fail("non-hermitian-integrals", "one-electron block is not hermitian");
  return data;
}

}  // namespace

Model load_integrals(const std::string& path, std::size_t cap) {
  IntegralData data = parse_integral_file(path, false);
  const int m = data.norb;
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s)
          if (std::abs(data.w(p, q, r, s) - std::conj(data.w(r, s, p, q))) >
              1e-12)
            fail("non-hermitian-integrals",
                 "two-electron block breaks w_pqrs = conj(w_rspq)");
  FockSpace space = FockSpace::enumerate(m, data.nelec, cap);
  ManyBodyOperator h1 = build_one_body(space, data.h, "h");
  ManyBodyOperator h2 = build_two_body(space, data.w, "w");
  Matrix hmat = h1.matrix + h2.matrix;
  const auto dim = static_cast<Eigen::Index>(space.size());
  hmat += data.core * Matrix::Identity(dim, dim);
  ModelSpec spec;
  spec.kind = ModelKind::integral_file;
  spec.path = path;
  spec.sites = m / 2;
  spec.filling = data.nelec;
  SpinLayout layout = SpinLayout::blocked(m / 2);
  ManyBodyOperator h{"integral_file", std::move(hmat), std::nullopt};
  return Model{spec, std::move(space), layout, std::move(h)};
}

Model build_model(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::hubbard_chain:
      return build_hubbard(spec);
    case ModelKind::pairing:
      return build_pairing(spec);
    case ModelKind::integral_file:
      return load_integrals(spec.path);
  }
  fail("invalid-argument", "unknown model kind");
}

std::pair<OneBodyMatrix, int> load_one_body_operator(const std::string& path) {
  IntegralData data = parse_integral_file(path, true);
  return {data.h, data.norb};
}

GroundStateSolution solve_ground(const ManyBodyOperator& h,
                                 const SolveOptions& opts) {
  if (!is_hermitian(h.matrix, 1e-10 * std::max(1.0, h.matrix.norm())))
    fail("non-hermitian-input", "operator '" + h.label + "' is not hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix);
  if (es.info() != Eigen::Success)
    fail("solver-failure", "eigendecomposition did not converge");

  GroundStateSolution gs;
  gs.energies = es.eigenvalues();
  gs.vectors = es.eigenvectors();
  const Eigen::Index dim = gs.energies.size();
  gs.omega = (gs.energies.array() - gs.energies(0)).cwiseMax(0.0);
  const double tol_abs = opts.tol_deg * (std::abs(gs.energies(0)) + 1.0);
  gs.degeneracy = 1;
  while (gs.degeneracy < dim && gs.omega(gs.degeneracy) < tol_abs)
    ++gs.degeneracy;
  gs.psi0 = gs.vectors.col(0);
  if (opts.psi0) set_initial_state(gs, *opts.psi0);
  return gs;
}

void set_initial_state(GroundStateSolution& gs, const Vector& psi0,
                       double tol) {
  if (psi0.size() != gs.dim())
    fail("dimension-mismatch", "psi0 has wrong dimension");
  double n = psi0.norm();
  if (n == 0.0) fail("invalid-argument", "psi0 is the zero vector");
  Vector psi = psi0 / n;
  const int d = gs.degeneracy;
  Matrix vd = gs.vectors.leftCols(d);
  Vector coeff = vd.adjoint() * psi;  // components inside the degenerate span
  if ((psi - vd * coeff).norm() > tol)
    fail("psi0-outside-degenerate-subspace",
         "initial state has components on excited eigenstates");
  coeff.normalize();
  // Unitary completion with first column = coeff, by Gram-Schmidt against
  // the coordinate directions.
  Matrix u = Matrix::Zero(d, d);
  u.col(0) = coeff;
  int filled = 1;
  for (int seed = 0; seed < d && filled < d; ++seed) {
    Vector cand = Vector::Zero(d);
    cand(seed) = 1.0;
    for (int k = 0; k < filled; ++k) cand -= u.col(k) * (u.col(k).dot(cand));
    double cn = cand.norm();
    if (cn > 1e-8) u.col(filled++) = cand / cn;
  }
  if (filled != d) fail("solver-failure", "could not complete degenerate basis");
  gs.vectors.leftCols(d) = vd * u;
  gs.psi0 = gs.vectors.col(0);
}

void set_initial_state_sz(GroundStateSolution& gs, const ManyBodyOperator& sz,
                          double m_value, double tol) {
  const int d = gs.degeneracy;
  Matrix vd = gs.vectors.leftCols(d);
  Matrix sz_block = vd.adjoint() * sz.matrix * vd;
  Eigen::SelfAdjointEigenSolver<Matrix> es(sz_block);
  for (Eigen::Index k = 0; k < d; ++k) {
    if (std::abs(es.eigenvalues()(k) - m_value) < tol) {
      set_initial_state(gs, vd * es.eigenvectors().col(k));
      return;
    }
  }
  fail("invalid-argument", "no degenerate component with Sz = " +
                               std::to_string(m_value));
}

}  // namespace respkern
