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

#include "lincap/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lincap/error.hpp"

namespace lincap {

namespace {

void require_counts(int n, int m) {
  if (n < 0 || m < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "need n >= 0 photons and m >= 1 modes, got n=" + std::to_string(n) +
                    " m=" + std::to_string(m));
  }
}

void enumerate_into(int remaining, int mode, Occupation& current, std::vector<Occupation>& out) {
  const int last = static_cast<int>(current.size()) - 1;
  if (mode == last) {
    current[static_cast<std::size_t>(mode)] = remaining;
    out.push_back(current);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    current[static_cast<std::size_t>(mode)] = k;
    enumerate_into(remaining - k, mode + 1, current, out);
  }
}

}  // namespace

std::uint64_t dim_fock(int n, int m) {
  require_counts(n, m);
  // C(n+m-1, k) with k = min(n, m-1); every partial product is itself a binomial.
  const std::uint64_t top = static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(m) - 1;
  const std::uint64_t k = std::min<std::uint64_t>(static_cast<std::uint64_t>(n),
                                                  static_cast<std::uint64_t>(m) - 1);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (top - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      throw Error(ErrorCode::Overflow, "g(" + std::to_string(n) + ", " + std::to_string(m) +
                                           ") exceeds 64-bit range; use log2_dim_fock");
    }
  }
  return static_cast<std::uint64_t>(result);
}

double log2_dim_fock(int n, int m) {
  require_counts(n, m);
  const int k = std::min(n, m - 1);
  const int top = n + m - 1;
  double acc = 0.0;
  for (int i = 1; i <= k; ++i) {
    acc += std::log2(static_cast<double>(top - k + i) / static_cast<double>(i));
  }
  return acc;
}

double log2_dim_fock_continuous(double n, double m) {
  return (std::lgamma(n + m) - std::lgamma(n + 1.0) - std::lgamma(m)) / std::log(2.0);
}

FockBasis::FockBasis(int photons, int modes, std::size_t dimension_cap)
    : photons_(photons), modes_(modes) {
  require_counts(photons, modes);
  std::uint64_t dim = 0;
  try {
    dim = dim_fock(photons, modes);
  } catch (const Error&) {
    throw Error(ErrorCode::DimensionCap, "Fock space dimension overflows 64 bits");
  }
  if (dim > dimension_cap) {
    throw Error(ErrorCode::DimensionCap, "Fock space dimension " + std::to_string(dim) +
                                             " exceeds cap " + std::to_string(dimension_cap));
  }
  states_.reserve(static_cast<std::size_t>(dim));
  Occupation current(static_cast<std::size_t>(modes), 0);
  enumerate_into(photons, 0, current, states_);
  for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], i);
}

std::optional<std::size_t> FockBasis::find(const Occupation& occupation) const {
  const auto it = index_.find(occupation);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FockBasis::index_of(const Occupation& occupation) const {
  if (auto idx = find(occupation)) return *idx;
  throw Error(ErrorCode::InvalidArgument, "occupation vector is not a member of this basis");
}

std::shared_ptr<const FockBasis> enumerate_basis(int photons, int modes, std::size_t dimension_cap) {
  return std::make_shared<const FockBasis>(photons, modes, dimension_cap);
}

SectorDecomposition::SectorDecomposition(std::shared_ptr<const FockBasis> basis, int alice_modes)
    : basis_(std::move(basis)), alice_modes_(alice_modes) {
  if (!basis_) throw Error(ErrorCode::InvalidArgument, "null basis");
  const int total_modes = basis_->modes();
  if (alice_modes < 1 || alice_modes > total_modes - 1) {
    throw Error(ErrorCode::InvalidModeSplit,
                "Alice and Bob each need at least one mode: M=" + std::to_string(total_modes) +
                    " M_A=" + std::to_string(alice_modes));
  }
  const int photons = basis_->photons();
  const int bob = total_modes - alice_modes;

  sectors_.resize(static_cast<std::size_t>(photons) + 1);
  for (int na = 0; na <= photons; ++na) {
    Sector& s = sectors_[static_cast<std::size_t>(na)];
    s.alice_photons = na;
    s.alice_basis = enumerate_basis(na, alice_modes);
    s.bob_basis = enumerate_basis(photons - na, bob);
    s.members.assign(s.alice_dim() * s.bob_dim(), 0);
  }

  locations_.resize(basis_->size());
  for (std::size_t i = 0; i < basis_->size(); ++i) {
    const Occupation& occ = basis_->state(i);
    const Occupation alice(occ.begin(), occ.begin() + alice_modes);
    const Occupation bob_occ(occ.begin() + alice_modes, occ.end());
    const int na = std::accumulate(alice.begin(), alice.end(), 0);
    Sector& s = sectors_[static_cast<std::size_t>(na)];
    const std::size_t a = s.alice_basis->index_of(alice);
    const std::size_t b = s.bob_basis->index_of(bob_occ);
    s.members[a * s.bob_dim() + b] = i;
    locations_[i] = Location{na, a, b};
  }
}

std::shared_ptr<const SectorDecomposition> sector_split(std::shared_ptr<const FockBasis> basis,
                                                        int alice_modes) {
  return std::make_shared<const SectorDecomposition>(std::move(basis), alice_modes);
}

}  // namespace lincap
