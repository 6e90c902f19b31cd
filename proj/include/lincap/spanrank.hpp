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
#include <optional>
#include <string>
#include <vector>

#include "lincap/fock.hpp"
#include "lincap/multiphoton.hpp"
#include "lincap/numerics.hpp"

namespace lincap {

enum class InitialStateMode { RandomGeneric, UserSupplied };

inline constexpr double kConfidentGap = 1e3;

struct SpanEstimate {
  int rank = 0;
  int num_samples = 0;
  double singular_gap = 0.0;
  std::uint64_t seed = 0;
  InitialStateMode initial_state_mode = InitialStateMode::RandomGeneric;
  std::uint64_t bound = 0;  // analytic span bound for the same (N, M, M_A)

  bool confident() const noexcept { return singular_gap > kConfidentGap; }
};

struct SpanOptions {
  int num_samples = 0;  // 0 selects max(2 * bound, bound + 8)
  std::uint64_t seed = 42;
  int threads = 0;
  double rank_tolerance = kDefaultRankTolerance;
  /// Throw ErrorCode::Inconclusive instead of returning an unconfident estimate.
  bool strict = false;
  std::optional<StateVector> initial_state;
};

/// Complex-Gaussian amplitudes, normalized. With probability one every sector
/// has full Schmidt rank min(g_A, g_B).
StateVector random_initial_state(const SectorDecomposition& decomposition, Rng& rng);

/// Schmidt rank of psi's component in every sector, in order of N_A.
std::vector<int> sector_schmidt_ranks(const StateVector& psi, const SectorDecomposition& decomposition,
                                      double rel_tol = kDefaultRankTolerance);

/// Rank of the ensemble {lift(U_k) psi1} over Haar-random U_k on Alice's modes.
/// Sample k draws from derive_seed(seed, k + 1) and psi1 from derive_seed(seed, 0),
/// so the result does not depend on the thread count.
SpanEstimate estimate_span(int photons, int modes, int alice_modes, const SpanOptions& options = {});

struct SpanSweepRow {
  int photons = 0;
  int modes = 0;
  int alice_modes = 0;
  SpanEstimate estimate;
  bool match = false;
};

/// estimate_span for every M_A = 1 .. M-1. Requires d_H <= 10^4.
std::vector<SpanSweepRow> span_sweep(int photons, int modes, const SpanOptions& options = {});

std::string span_sweep_csv(const std::vector<SpanSweepRow>& rows);

}  // namespace lincap
