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
#include <span>
#include <string>
#include <vector>

namespace lincap {

/// Asymptotic behaviour of the span bound as a function of the mode split.
enum class Regime {
  AliceDominant,  // M_A > M_B: d_S approaches d_H
  Balanced,       // M_A == M_B: d_S approaches d_H / 2
  BobDominant,    // M_A < M_B: d_S << d_H
  BobSaturated,   // M_B >= g(N-1, M_A): d_S approaches g(N-1, M_A)^2
};

const char* to_string(Regime regime) noexcept;

/// f(N_A) = g(N_A, M_A) * min(g(N_A, M_A), g(N - N_A, M_B)), exact.
/// Throws ErrorCode::Overflow when the product does not fit in 64 bits.
std::uint64_t f_term(int alice_photons, int photons, int alice_modes, int bob_modes);
double log2_f_term(int alice_photons, int photons, int alice_modes, int bob_modes);

/// Sum of f(N_A) over N_A = 0..N: the largest span Alice can reach.
std::uint64_t span_bound(int photons, int modes, int alice_modes);
double log2_span_bound(int photons, int modes, int alice_modes);

/// log2 of span_bound; falls back to log-space arithmetic when the exact sum overflows.
double capacity_bits(int photons, int modes, int alice_modes);

/// log2 d_H, the Hilbert-space ceiling on any encoding.
double hilbert_capacity_bits(int photons, int modes);

/// Stirling form N [log2(1 + a) + a log2(1 + 1/a)] of log2 d_H for M = a N.
/// Only meaningful for large N.
double stirling_log2_dH(double photons, double alpha);

struct PeakCrossover {
  double peak = 0.0;       // N M_A / M, where g(N_A, M_A) g(N_B, M_B) peaks
  double crossover = 0.0;  // where g(N_A, M_A) = g(N - N_A, M_B), continuous in N_A
};

PeakCrossover peak_and_crossover(int photons, int modes, int alice_modes);

Regime classify_regime(int photons, int modes, int alice_modes);

struct SectorTerm {
  int alice_photons = 0;
  std::optional<std::uint64_t> exact;  // empty when it overflows 64 bits
  double log2_value = 0.0;
};

struct CapacityReport {
  int photons = 0;
  int modes = 0;
  int alice_modes = 0;
  int bob_modes = 0;
  std::optional<std::uint64_t> hilbert_dim;
  double log2_hilbert_dim = 0.0;
  std::vector<SectorTerm> terms;
  std::optional<std::uint64_t> span_bound;
  double log2_span_bound = 0.0;
  double capacity_bits = 0.0;
  Regime regime = Regime::Balanced;
  double peak = 0.0;
  double crossover = 0.0;
};

CapacityReport capacity_report(int photons, int modes, int alice_modes);

struct AsymptoticRow {
  int photons = 0;
  int modes = 0;
  int alice_modes = 0;
  double ratio = 0.0;  // requested M_A / M_B before rounding
  double log2_dS = 0.0;
  double log2_dH = 0.0;
  double dualrail_bits = 0.0;
};

/// Integer M_A closest to M r / (1 + r). Throws ErrorCode::InvalidModeSplit
/// when the result leaves Bob (or Alice) without a mode.
int alice_modes_for_ratio(int modes, double ratio);

/// Capacity curves for M = 2N and the requested Alice/Bob mode ratios.
/// The dual-rail reference is N bits: N/2 Bell pairs carrying 2 bits each.
std::vector<AsymptoticRow> asymptotic_table(std::span<const int> photon_counts, std::span<const double> ratios);

std::string asymptotic_csv(const std::vector<AsymptoticRow>& rows);

}  // namespace lincap
