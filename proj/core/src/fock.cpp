// Copyright 2026 The respkern Authors
// SPDX-License-Identifier: Apache-2.0

#include "respkern/fock.hpp"

#include <algorithm>
#include <cstdint>

namespace respkern {

namespace {

int parity_below(std::uint32_t bits, int p) {
  std::uint32_t mask = (p == 0) ? 0u : ((1u << p) - 1u);
  return (std::popcount(bits & mask) & 1) ? -1 : 1;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

std::optional<ExcitationResult> apply_excitation(Determinant det, int create,
                                                 int annihilate) {
  if (!det.occupied(annihilate)) return std::nullopt;
  int sign = parity_below(det.bits, annihilate);
  det.bits &= ~(1u << annihilate);
  if (det.occupied(create)) return std::nullopt;
  sign *= parity_below(det.bits, create);
  det.bits |= (1u << create);
  return ExcitationResult{det, sign};
}

FockSpace FockSpace::enumerate(int n_orbitals, int n_particles,
                               std::size_t cap) {
  if (n_orbitals < 0 || n_orbitals > kMaxOrbitals || n_particles < 0 ||
      n_particles > n_orbitals)
    fail("invalid-argument",
         "need 0 <= n_particles <= n_orbitals <= " +
             std::to_string(kMaxOrbitals));
  std::uint64_t dim = binomial(n_orbitals, n_particles);
  if (dim > cap)
    fail("sector-too-large", "dimension " + std::to_string(dim) +
                                 " exceeds cap " + std::to_string(cap));

  FockSpace space;
  space.n_orbitals_ = n_orbitals;
  space.n_particles_ = n_particles;
  space.dets_.reserve(dim);
  if (n_particles == 0) {
    space.dets_.push_back(Determinant{0});
    return space;
  }
  // Gosper's hack walks the N-bit subsets in ascending bitstring order,
  // which is the lexicographic layout the rest of the library relies on.
  std::uint32_t v = (1u << n_particles) - 1u;
  const std::uint32_t limit = 1u << n_orbitals;
  while (v < limit) {
    space.dets_.push_back(Determinant{v});
    std::uint32_t c = v & (~v + 1u);
    std::uint32_t r = v + c;
    if (r >= limit || c == 0) break;
    v = (((r ^ v) >> 2) / c) | r;
  }
  return space;
}

int FockSpace::lookup(Determinant d) const {
  auto it = std::lower_bound(dets_.begin(), dets_.end(), d);
  if (it == dets_.end() || it->bits != d.bits) return -1;
  return static_cast<int>(it - dets_.begin());
}

ManyBodyOperator build_one_body(const FockSpace& space, const OneBodyMatrix& u,
                                std::string label) {
  const int m = space.n_orbitals();
  if (u.rows() != m || u.cols() != m)
    fail("dimension-mismatch", "one-body matrix must be " + std::to_string(m) +
                                   "x" + std::to_string(m));
  const auto dim = static_cast<Eigen::Index>(space.size());
  Matrix op = Matrix::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Determinant dj = space.det(j);
    for (int q : dj.occupied_list()) {
      for (int p = 0; p < m; ++p) {
        if (u(p, q) == Complex(0, 0)) continue;
        auto res = apply_excitation(dj, p, q);
        if (!res) continue;
        int i = space.lookup(res->det);
        op(i, j) += static_cast<double>(res->sign) * u(p, q);
      }
    }
  }
  return ManyBodyOperator{std::move(label), std::move(op), u};
}

ManyBodyOperator build_two_body(const FockSpace& space, const Tensor4& w,
                                std::string label) {
  const int m = space.n_orbitals();
  if (w.dim() != m)
    fail("dimension-mismatch",
         "two-body tensor must have dimension " + std::to_string(m));
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s)
          if (std::abs(w(p, q, r, s) - std::conj(w(r, s, p, q))) > 1e-12)
            fail("invalid-argument",
                 "two-body tensor breaks w_pqrs = conj(w_rspq)");

  const auto dim = static_cast<Eigen::Index>(space.size());
  Matrix op = Matrix::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Determinant dj = space.det(j);
    for (int r : dj.occupied_list()) {
      int sgn_r = 1;
      Determinant d1 = dj;
      {
        std::uint32_t mask = (r == 0) ? 0u : ((1u << r) - 1u);
        sgn_r = (std::popcount(d1.bits & mask) & 1) ? -1 : 1;
        d1.bits &= ~(1u << r);
      }
      for (int s : d1.occupied_list()) {
        Determinant d2 = d1;
        std::uint32_t mask_s = (s == 0) ? 0u : ((1u << s) - 1u);
        int sgn_s = (std::popcount(d2.bits & mask_s) & 1) ? -1 : 1;
        d2.bits &= ~(1u << s);
        for (int q = 0; q < m; ++q) {
          if (d2.occupied(q)) continue;
          Determinant d3 = d2;
          std::uint32_t mask_q = (q == 0) ? 0u : ((1u << q) - 1u);
          int sgn_q = (std::popcount(d3.bits & mask_q) & 1) ? -1 : 1;
          d3.bits |= (1u << q);
          for (int p = 0; p < m; ++p) {
            if (d3.occupied(p)) continue;
            const Complex c = w(p, q, r, s);
            if (c == Complex(0, 0)) continue;
            Determinant d4 = d3;
            std::uint32_t mask_p = (p == 0) ? 0u : ((1u << p) - 1u);
            int sgn_p = (std::popcount(d4.bits & mask_p) & 1) ? -1 : 1;
            d4.bits |= (1u << p);
            int i = space.lookup(d4);
            op(i, j) += 0.5 * static_cast<double>(sgn_r * sgn_s * sgn_q *
                                                  sgn_p) *
                        c;
          }
        }
      }
    }
  }
  return ManyBodyOperator{std::move(label), std::move(op), std::nullopt};
}

}  // namespace respkern
