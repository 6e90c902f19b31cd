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

#include <cstdint>
#include <functional>
#include <random>

#include "lincap/types.hpp"

namespace lincap {

/// Explicit seeded generator; every stochastic routine takes one by reference.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  Complex complex_normal() { return {normal(), normal()}; }
  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::uint64_t seed_;
};

/// Deterministic per-task seed from a master seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t task) noexcept;

/// Square unitary acting on a set of optical modes.
class ModeUnitary {
 public:
  /// Throws ErrorCode::InvalidArgument unless the matrix is square and
  /// max|U^dag U - I| <= tolerance.
  explicit ModeUnitary(CMatrix matrix, double tolerance = 1e-10);

  static ModeUnitary identity(int modes);

  int dimension() const noexcept { return static_cast<int>(matrix_.rows()); }
  const CMatrix& matrix() const noexcept { return matrix_; }

 private:
  struct Unchecked {};
  ModeUnitary(CMatrix matrix, Unchecked) : matrix_(std::move(matrix)) {}
  friend ModeUnitary expm_antihermitian(const CMatrix& generator);

  CMatrix matrix_;
};

double unitarity_defect(const CMatrix& u);

struct HermitianSpectrum {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // columns, orthonormal
};

/// Eigendecomposition of (A + A^dag)/2. Throws ErrorCode::NonConvergence.
HermitianSpectrum eigh(const CMatrix& a);

struct RankInfo {
  int rank = 0;
  /// sigma_rank / sigma_{rank+1}; +infinity when no smaller singular value exists.
  double gap = 0.0;
  RVector singular_values;  // descending
};

inline constexpr double kDefaultRankTolerance = 1e-8;

/// Rank as the count of singular values above rel_tol * sigma_max.
RankInfo numerical_rank_info(const CMatrix& columns, double rel_tol = kDefaultRankTolerance);
int numerical_rank(const CMatrix& columns, double rel_tol = kDefaultRankTolerance);

/// exp(H) for anti-Hermitian H, through the eigendecomposition of iH.
ModeUnitary expm_antihermitian(const CMatrix& generator);

/// Principal anti-Hermitian logarithm of a unitary (eigenphases in (-pi, pi]).
CMatrix logm_unitary(const ModeUnitary& u);

/// Haar-random unitary: QR of a complex Gaussian matrix with the phases of
/// R's diagonal moved into Q.
ModeUnitary haar_unitary(int modes, Rng& rng);
ModeUnitary haar_unitary(int modes, std::uint64_t seed);

/// Runs body(i) for i in [0, count) over up to `threads` workers
/// (0 = hardware concurrency). Work items must be independent.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace lincap
