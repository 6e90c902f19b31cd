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

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace lincap {

/// Photon count per optical mode, i.e. the label of a Fock state |n1 n2 ... nM>.
using Occupation = std::vector<int>;

inline constexpr std::size_t kDefaultDimensionCap = 1'000'000;

/// Number of ways to distribute n photons over m modes, (n+m-1)! / (n! (m-1)!).
/// Throws ErrorCode::Overflow when the exact value does not fit in 64 bits;
/// use log2_dim_fock in that case.
std::uint64_t dim_fock(int n, int m);

/// log2 of dim_fock, evaluated as a sum of logarithms so it never overflows.
double log2_dim_fock(int n, int m);

/// Continuous extension of log2_dim_fock through the gamma function.
/// Only used where a real-valued photon number is meaningful (crossover search).
double log2_dim_fock_continuous(double n, double m);

/// Ordered Fock basis for a fixed photon number and mode count.
///
/// States are listed in descending lexicographic order of the occupation tuple,
/// so for two photons in four modes the order is |2000>, |1100>, |1010>, ...,
/// |0002>.
class FockBasis {
 public:
  FockBasis(int photons, int modes, std::size_t dimension_cap = kDefaultDimensionCap);

  int photons() const noexcept { return photons_; }
  int modes() const noexcept { return modes_; }
  std::size_t size() const noexcept { return states_.size(); }

  const Occupation& state(std::size_t index) const { return states_.at(index); }
  const std::vector<Occupation>& states() const noexcept { return states_; }

  std::optional<std::size_t> find(const Occupation& occupation) const;
  /// Throws ErrorCode::InvalidArgument if the occupation is not in the basis.
  std::size_t index_of(const Occupation& occupation) const;

  bool same_space(const FockBasis& other) const noexcept {
    return photons_ == other.photons_ && modes_ == other.modes_;
  }

 private:
  int photons_;
  int modes_;
  std::vector<Occupation> states_;
  std::map<Occupation, std::size_t> index_;
};

std::shared_ptr<const FockBasis> enumerate_basis(int photons, int modes,
                                                 std::size_t dimension_cap = kDefaultDimensionCap);

/// One fixed-photon-number term of the bipartite split: Alice holds
/// alice_photons photons in her modes, Bob holds the rest.
struct Sector {
  int alice_photons = 0;
  std::shared_ptr<const FockBasis> alice_basis;
  std::shared_ptr<const FockBasis> bob_basis;
  /// members[a * bob_dim + b] is the full-basis index of Alice state a with Bob state b.
  std::vector<std::size_t> members;

  std::size_t alice_dim() const noexcept { return alice_basis->size(); }
  std::size_t bob_dim() const noexcept { return bob_basis->size(); }
  std::size_t full_index(std::size_t alice, std::size_t bob) const {
    return members[alice * bob_dim() + bob];
  }
};

/// Split of a FockBasis into sectors of fixed Alice photon number.
/// Alice always owns the first alice_modes modes.
class SectorDecomposition {
 public:
  struct Location {
    int sector = 0;
    std::size_t alice = 0;
    std::size_t bob = 0;
  };

  SectorDecomposition(std::shared_ptr<const FockBasis> basis, int alice_modes);

  const FockBasis& basis() const noexcept { return *basis_; }
  const std::shared_ptr<const FockBasis>& basis_ptr() const noexcept { return basis_; }
  int alice_modes() const noexcept { return alice_modes_; }
  int bob_modes() const noexcept { return basis_->modes() - alice_modes_; }

  std::span<const Sector> sectors() const noexcept { return sectors_; }
  const Sector& sector(int alice_photons) const { return sectors_.at(static_cast<std::size_t>(alice_photons)); }
  const Location& locate(std::size_t full_index) const { return locations_.at(full_index); }

 private:
  std::shared_ptr<const FockBasis> basis_;
  int alice_modes_;
  std::vector<Sector> sectors_;
  std::vector<Location> locations_;
};

/// Throws ErrorCode::InvalidModeSplit unless 1 <= alice_modes <= M-1.
std::shared_ptr<const SectorDecomposition> sector_split(std::shared_ptr<const FockBasis> basis,
                                                        int alice_modes);

}  // namespace lincap
