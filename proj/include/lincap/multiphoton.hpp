/*
 * Copyright 2026 The lincap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <memory>
#include <span>
#include <vector>

#include "lincap/fock.hpp"
#include "lincap/numerics.hpp"
#include "lincap/types.hpp"

namespace lincap {

inline constexpr int kMaxPermanentSize = 16;

/// Permanent by Ryser's formula with Gray-code subset iteration, O(2^k k).
/// The 0x0 permanent is 1. Throws ErrorCode::SizeCap above kMaxPermanentSize.
Complex permanent(const CMatrix& matrix);

/// Permanent of the matrix built from `u` by repeating row i row_counts[i]
/// times and column j col_counts[j] times. Both count vectors must sum to the
/// same value.
Complex permanent_repeated(const CMatrix& u, std::span<const int> row_counts,
                           std::span<const int> col_counts);

/// Amplitude vector over a FockBasis.
struct StateVector {
  std::shared_ptr<const FockBasis> basis;
  CVector amplitudes;

  double norm() const { return amplitudes.norm(); }
};

/// Lift of a mode unitary on Alice's modes to the full Fock space.
///
/// Block diagonal: for every Alice photon number there is one dense Alice
/// block, repeated (tensored with the identity) over all of Bob's occupation
/// patterns in that sector.
class FockOperator {
 public:
  FockOperator(std::shared_ptr<const SectorDecomposition> decomposition, std::vector<CMatrix> blocks);

  const SectorDecomposition& decomposition() const noexcept { return *decomposition_; }
  const std::shared_ptr<const SectorDecomposition>& decomposition_ptr() const noexcept {
    return decomposition_;
  }
  const std::vector<CMatrix>& blocks() const noexcept { return blocks_; }
  const CMatrix& block(int alice_photons) const { return blocks_.at(static_cast<std::size_t>(alice_photons)); }

  /// Throws ErrorCode::BasisMismatch when psi lives on a different basis.
  StateVector apply(const StateVector& psi) const;
  StateVector apply_adjoint(const StateVector& psi) const;

  /// Raw amplitude versions for inner loops; no basis check.
  void apply_to(const CVector& in, CVector& out) const;
  void apply_adjoint_to(const CVector& in, CVector& out) const;

  /// Full d_H x d_H matrix; meant for tests and small diagnostics.
  CMatrix dense() const;

 private:
  std::shared_ptr<const SectorDecomposition> decomposition_;
  std::vector<CMatrix> blocks_;
};

/// <m|phi(U)|n> = Per(U[m|n]) / sqrt(prod m_i! prod n_j!), rows repeated by the
/// output occupation m and columns by the input occupation n. Under this
/// convention the single-photon action is |j> -> sum_i U_ij |i> and
/// lift(U) lift(V) = lift(UV).
FockOperator lift_alice_unitary(const ModeUnitary& u,
                                std::shared_ptr<const SectorDecomposition> decomposition);

/// Alice block for a single sector.
CMatrix lift_block(const CMatrix& u, const FockBasis& alice_basis);

/// Precomputed row/column expansions for every block entry of one Alice
/// basis, so repeated lifts (optimizer inner loops) skip the bookkeeping.
class LiftPlan {
 public:
  explicit LiftPlan(const FockBasis& alice_basis);

  /// Writes the lifted block of u into `block` (resized as needed).
  void lift_into(const CMatrix& u, CMatrix& block) const;
  std::size_t dimension() const noexcept { return dim_; }

 private:
  std::size_t dim_ = 0;
  int photons_ = 0;
  std::vector<std::vector<int>> expanded_;  // mode index of each photon, per basis state
  std::vector<double> inv_sqrt_norm_;       // 1 / sqrt(prod n_i!), per basis state
};

/// Independent construction of the same lift by expanding the creation
/// operator polynomial prod_j (sum_i u_ij a_i^dag)^{n_j} term by term.
/// Restricted to d_H <= 500.
FockOperator lift_oracle_multinomial(const ModeUnitary& u,
                                     std::shared_ptr<const SectorDecomposition> decomposition);

}  // namespace lincap
