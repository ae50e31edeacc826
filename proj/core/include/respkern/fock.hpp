// Copyright 2026 The respkern Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "respkern/types.hpp"

namespace respkern {

/// Slater determinant as an occupation bitstring over spin-orbitals.
/// Bit p set means orbital p is occupied. The ket convention is
/// creation operators applied in ascending orbital order,
/// |det> = a+_{p1} a+_{p2} ... |> with p1 < p2 < ...
struct Determinant {
  std::uint32_t bits = 0;

  bool occupied(int p) const { return (bits >> p) & 1u; }
  int particle_count() const { return std::popcount(bits); }
  auto operator<=>(const Determinant&) const = default;

  std::vector<int> occupied_list() const {
    std::vector<int> occ;
    for (std::uint32_t b = bits; b; b &= b - 1)
      occ.push_back(std::countr_zero(b));
    return occ;
  }
};

struct ExcitationResult {
  Determinant det;
  int sign = 1;  // +1 or -1
};

/// a+_create a_annihilate |det>, with the fermionic phase from counting
/// occupied orbitals below each affected position. Returns nullopt when the
/// result vanishes (annihilating an empty orbital or creating an occupied
/// one).
std::optional<ExcitationResult> apply_excitation(Determinant det, int create,
                                                 int annihilate);

/// Fixed-particle-number sector of a finite Fock space. Determinants are
/// stored sorted by ascending bitstring value; lookup is a bijection onto
/// 0..size()-1.
class FockSpace {
 public:
  static constexpr int kMaxOrbitals = 24;
  static constexpr std::size_t kDefaultCap = 50000;

  static FockSpace enumerate(int n_orbitals, int n_particles,
                             std::size_t cap = kDefaultCap);

  int n_orbitals() const { return n_orbitals_; }
  int n_particles() const { return n_particles_; }
  std::size_t size() const { return dets_.size(); }
  const std::vector<Determinant>& dets() const { return dets_; }
  const Determinant& det(std::size_t i) const { return dets_[i]; }

  /// Index of a determinant, or -1 if it is not in the sector.
  int lookup(Determinant d) const;

 private:
  int n_orbitals_ = 0;
  int n_particles_ = 0;
  std::vector<Determinant> dets_;
};

using OneBodyMatrix = Matrix;  // M x M coefficients u_pq of sum u_pq a+_p a_q

/// Dense rank-4 coefficient tensor w_pqrs for 1/2 sum w a+_p a+_q a_s a_r.
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int dim)
      : dim_(dim), v_(static_cast<std::size_t>(dim) * dim * dim * dim) {}

  int dim() const { return dim_; }
  Complex& operator()(int p, int q, int r, int s) {
    return v_[index(p, q, r, s)];
  }
  const Complex& operator()(int p, int q, int r, int s) const {
    return v_[index(p, q, r, s)];
  }

 private:
  std::size_t index(int p, int q, int r, int s) const {
    return ((static_cast<std::size_t>(p) * dim_ + q) * dim_ + r) * dim_ + s;
  }
  int dim_ = 0;
  std::vector<Complex> v_;
};

/// Labeled operator in the determinant basis of a sector, with the one-body
/// coefficient matrix kept when the operator was built from one.
struct ManyBodyOperator {
  std::string label;
  Matrix matrix;
  std::optional<OneBodyMatrix> one_body;

  Eigen::Index dim() const { return matrix.rows(); }
  Complex expectation(const Vector& state) const {
    return state.dot(matrix * state);
  }
};

/// Assemble sum_pq u_pq a+_p a_q on the sector. Hermitian u yields a
/// hermitian matrix entry by entry.
ManyBodyOperator build_one_body(const FockSpace& space, const OneBodyMatrix& u,
                                std::string label);

/// Assemble 1/2 sum_pqrs w_pqrs a+_p a+_q a_s a_r on the sector.
/// Requires the hermiticity symmetry w_pqrs = conj(w_rspq).
ManyBodyOperator build_two_body(const FockSpace& space, const Tensor4& w,
                                std::string label);

}  // namespace respkern
