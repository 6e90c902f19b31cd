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

#include "lincap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "lincap/error.hpp"
#include "lincap/fock.hpp"

namespace lincap {

namespace {

void require_split(int photons, int modes, int alice_modes) {
  if (photons < 0) throw Error(ErrorCode::InvalidArgument, "photon number must be >= 0");
  if (alice_modes < 1 || alice_modes > modes - 1) {
    throw Error(ErrorCode::InvalidModeSplit,
                "need 1 <= M_A <= M-1, got M=" + std::to_string(modes) +
                    " M_A=" + std::to_string(alice_modes));
  }
}

std::optional<std::uint64_t> try_dim(int n, int m) {
  try {
    return dim_fock(n, m);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Overflow) return std::nullopt;
    throw;
  }
}

std::optional<std::uint64_t> try_f_term(int na, int n, int ma, int mb) {
  try {
    return f_term(na, n, ma, mb);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Overflow) return std::nullopt;
    throw;
  }
}

double log2_sum(const std::vector<double>& logs) {
  const double top = *std::max_element(logs.begin(), logs.end());
  double acc = 0.0;
  for (double l : logs) acc += std::exp2(l - top);
  return top + std::log2(acc);
}

}  // namespace

const char* to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::AliceDominant: return "ALICE_DOMINANT";
    case Regime::Balanced: return "BALANCED";
    case Regime::BobDominant: return "BOB_DOMINANT";
    case Regime::BobSaturated: return "BOB_SATURATED";
  }
  return "UNKNOWN";
}

std::uint64_t f_term(int alice_photons, int photons, int alice_modes, int bob_modes) {
  if (alice_photons < 0 || alice_photons > photons || alice_modes < 1 || bob_modes < 1) {
    throw Error(ErrorCode::InvalidArgument, "f_term needs 0 <= N_A <= N and M_A, M_B >= 1");
  }
  const std::uint64_t ga = dim_fock(alice_photons, alice_modes);
  const std::uint64_t gb = dim_fock(photons - alice_photons, bob_modes);
  const std::uint64_t lo = std::min(ga, gb);
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(ga, lo, &out)) {
    throw Error(ErrorCode::Overflow, "f(N_A) exceeds 64-bit range");
  }
  return out;
}

double log2_f_term(int alice_photons, int photons, int alice_modes, int bob_modes) {
  if (alice_photons < 0 || alice_photons > photons || alice_modes < 1 || bob_modes < 1) {
    throw Error(ErrorCode::InvalidArgument, "f_term needs 0 <= N_A <= N and M_A, M_B >= 1");
  }
  const double la = log2_dim_fock(alice_photons, alice_modes);
  const double lb = log2_dim_fock(photons - alice_photons, bob_modes);
  return la + std::min(la, lb);
}

std::uint64_t span_bound(int photons, int modes, int alice_modes) {
  require_split(photons, modes, alice_modes);
  const int bob_modes = modes - alice_modes;
  std::uint64_t total = 0;
  for (int na = 0; na <= photons; ++na) {
    if (__builtin_add_overflow(total, f_term(na, photons, alice_modes, bob_modes), &total)) {
      throw Error(ErrorCode::Overflow, "span bound exceeds 64-bit range");
    }
  }
  return total;
}

double log2_span_bound(int photons, int modes, int alice_modes) {
  require_split(photons, modes, alice_modes);
  const int bob_modes = modes - alice_modes;
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(photons) + 1);
  for (int na = 0; na <= photons; ++na) logs.push_back(log2_f_term(na, photons, alice_modes, bob_modes));
  return log2_sum(logs);
}

double capacity_bits(int photons, int modes, int alice_modes) {
  require_split(photons, modes, alice_modes);
  try {
    return std::log2(static_cast<double>(span_bound(photons, modes, alice_modes)));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Overflow) throw;
  }
  return log2_span_bound(photons, modes, alice_modes);
}

double hilbert_capacity_bits(int photons, int modes) { return log2_dim_fock(photons, modes); }

double stirling_log2_dH(double photons, double alpha) {
  if (!(photons >= 1.0) || !(alpha > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "Stirling form needs N >= 1 and alpha > 0");
  }
  return photons * (std::log2(1.0 + alpha) + alpha * std::log2(1.0 + 1.0 / alpha));
}

PeakCrossover peak_and_crossover(int photons, int modes, int alice_modes) {
  require_split(photons, modes, alice_modes);
  const int bob_modes = modes - alice_modes;
  const double n = photons;
  PeakCrossover out;
  out.peak = n * alice_modes / static_cast<double>(modes);

  // h(x) = log2 g(x, M_A) - log2 g(N - x, M_B) is non-decreasing on [0, N].
  const auto h = [&](double x) {
    return log2_dim_fock_continuous(x, alice_modes) - log2_dim_fock_continuous(n - x, bob_modes);
  };
  double lo = 0.0;
  double hi = n;
  if (h(lo) >= 0.0) {
    out.crossover = lo;
    return out;
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    const double v = h(mid);
    if (v == 0.0) {
      out.crossover = mid;
      return out;
    }
    if (v < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.crossover = 0.5 * (lo + hi);
  return out;
}

Regime classify_regime(int photons, int modes, int alice_modes) {
  require_split(photons, modes, alice_modes);
  const int bob_modes = modes - alice_modes;
  if (alice_modes > bob_modes) return Regime::AliceDominant;
  if (alice_modes == bob_modes) return Regime::Balanced;
  if (photons >= 1) {
    const auto saturation = try_dim(photons - 1, alice_modes);
    if (saturation && static_cast<std::uint64_t>(bob_modes) >= *saturation) return Regime::BobSaturated;
  }
  return Regime::BobDominant;
}

CapacityReport capacity_report(int photons, int modes, int alice_modes) {
  require_split(photons, modes, alice_modes);
  CapacityReport r;
  r.photons = photons;
  r.modes = modes;
  r.alice_modes = alice_modes;
  r.bob_modes = modes - alice_modes;
  r.hilbert_dim = try_dim(photons, modes);
  r.log2_hilbert_dim = log2_dim_fock(photons, modes);

  bool exact_sum = true;
  std::uint64_t total = 0;
  for (int na = 0; na <= photons; ++na) {
    SectorTerm t;
    t.alice_photons = na;
    t.exact = try_f_term(na, photons, alice_modes, r.bob_modes);
    t.log2_value = log2_f_term(na, photons, alice_modes, r.bob_modes);
    if (!t.exact || __builtin_add_overflow(total, *t.exact, &total)) exact_sum = false;
    r.terms.push_back(t);
  }
  if (exact_sum) r.span_bound = total;
  r.log2_span_bound = log2_span_bound(photons, modes, alice_modes);
  r.capacity_bits = exact_sum ? std::log2(static_cast<double>(total)) : r.log2_span_bound;
  r.regime = classify_regime(photons, modes, alice_modes);
  const PeakCrossover pc = peak_and_crossover(photons, modes, alice_modes);
  r.peak = pc.peak;
  r.crossover = pc.crossover;
  return r;
}

int alice_modes_for_ratio(int modes, double ratio) {
  if (std::isinf(ratio) || std::isnan(ratio) || ratio <= 0.0) {
    throw Error(ErrorCode::InvalidModeSplit, "mode ratio must be a positive finite number");
  }
  const long ma = std::lround(static_cast<double>(modes) * ratio / (1.0 + ratio));
  if (ma < 1 || ma > modes - 1) {
    throw Error(ErrorCode::InvalidModeSplit,
                "ratio " + std::to_string(ratio) + " leaves a party without modes at M=" +
                    std::to_string(modes));
  }
  return static_cast<int>(ma);
}

std::vector<AsymptoticRow> asymptotic_table(std::span<const int> photon_counts, std::span<const double> ratios) {
  std::vector<AsymptoticRow> rows;
  for (double ratio : ratios) {
    for (int n : photon_counts) {
      if (n < 1) throw Error(ErrorCode::InvalidArgument, "photon counts must be >= 1");
      AsymptoticRow row;
      row.photons = n;
      row.modes = 2 * n;
      row.ratio = ratio;
      row.alice_modes = alice_modes_for_ratio(row.modes, ratio);
      row.log2_dS = log2_span_bound(n, row.modes, row.alice_modes);
      row.log2_dH = log2_dim_fock(n, row.modes);
      row.dualrail_bits = static_cast<double>(n);
      rows.push_back(row);
    }
  }
  return rows;
}

std::string asymptotic_csv(const std::vector<AsymptoticRow>& rows) {
  std::ostringstream out;
  out << "N,M,M_A,log2_dS,log2_dH,dualrail_bits\n";
  out << std::setprecision(12);
  for (const AsymptoticRow& r : rows) {
    out << r.photons << ',' << r.modes << ',' << r.alice_modes << ',' << r.log2_dS << ','
        << r.log2_dH << ',' << r.dualrail_bits << '\n';
  }
  return out.str();
}

}  // namespace lincap
