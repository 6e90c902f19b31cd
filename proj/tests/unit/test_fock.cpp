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

#include <doctest.h>

#include <cmath>
#include <set>

#include "lincap/error.hpp"
#include "lincap/fock.hpp"
#include "oracles.hpp"

using namespace lincap;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an lincap::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("dim_fock matches the binomial oracle") {
  for (int n = 0; n <= 12; ++n) {
    for (int m = 1; m <= 12; ++m) {
      CHECK(dim_fock(n, m) == static_cast<std::uint64_t>(oracle::g(n, m)));
    }
  }
  CHECK(dim_fock(2, 4) == 10);
  CHECK(dim_fock(3, 5) == 35);
  CHECK(dim_fock(3, 6) == 56);
  CHECK(dim_fock(0, 7) == 1);
  CHECK(dim_fock(5, 1) == 1);
}

TEST_CASE("dim_fock rejects bad arguments and overflow") {
  CHECK(code_of([] { dim_fock(-1, 3); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { dim_fock(2, 0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { dim_fock(200, 200); }) == ErrorCode::Overflow);
}

TEST_CASE("log2_dim_fock agrees with exact 128-bit values") {
  // C(79, 40) is about 5.4e22, past 64 bits but inside 128.
  const double exact = std::log2(static_cast<long double>(oracle::g(40, 40)));
  CHECK(std::abs(log2_dim_fock(40, 40) - exact) / exact < 1e-10);
  for (int n = 0; n <= 20; ++n) {
    for (int m = 1; m <= 20; ++m) {
      const double e = std::log2(static_cast<double>(oracle::g(n, m)));
      CHECK(log2_dim_fock(n, m) == doctest::Approx(e).epsilon(1e-12));
    }
  }
}

TEST_CASE("continuous extension coincides at integers") {
  for (int n = 0; n <= 10; ++n) {
    for (int m = 1; m <= 10; ++m) {
      CHECK(log2_dim_fock_continuous(n, m) == doctest::Approx(log2_dim_fock(n, m)).epsilon(1e-10));
    }
  }
}

TEST_CASE("basis order is descending lexicographic") {
  const auto basis = enumerate_basis(2, 4);
  const std::vector<Occupation> expected = {{2, 0, 0, 0}, {1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}, {0, 2, 0, 0},
                                            {0, 1, 1, 0}, {0, 1, 0, 1}, {0, 0, 2, 0}, {0, 0, 1, 1}, {0, 0, 0, 2}};
  REQUIRE(basis->size() == 10);
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(basis->state(i) == expected[i]);
}

TEST_CASE("basis equals the recursive enumeration oracle") {
  for (int n = 0; n <= 4; ++n) {
    for (int m = 1; m <= 6; ++m) {
      const auto basis = enumerate_basis(n, m);
      const auto ref = oracle::fock_states(n, m);
      REQUIRE(basis->size() == ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i) {
        CHECK(basis->state(i) == ref[i]);
        CHECK(basis->index_of(ref[i]) == i);
      }
    }
  }
}

TEST_CASE("basis lookup edge cases") {
  const auto basis = enumerate_basis(2, 3);
  CHECK_FALSE(basis->find({1, 1, 1}).has_value());
  CHECK_FALSE(basis->find({2, 0}).has_value());
  CHECK(code_of([&] { basis->index_of({3, 0, 0}); }) == ErrorCode::InvalidArgument);
  CHECK(enumerate_basis(0, 3)->size() == 1);
  CHECK(enumerate_basis(0, 3)->state(0) == Occupation{0, 0, 0});
  CHECK(code_of([] { enumerate_basis(10, 10, 100); }) == ErrorCode::DimensionCap);
}

TEST_CASE("sector split sizes") {
  const auto d = sector_split(enumerate_basis(2, 4), 2);
  REQUIRE(d->sectors().size() == 3);
  CHECK(d->sector(0).members.size() == 3);
  CHECK(d->sector(1).members.size() == 4);
  CHECK(d->sector(2).members.size() == 3);

  const auto d2 = sector_split(enumerate_basis(3, 5), 2);
  const std::vector<std::size_t> sizes = {10, 12, 9, 4};
  REQUIRE(d2->sectors().size() == 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(d2->sectors()[k].members.size() == sizes[k]);
}

TEST_CASE("sectors partition the basis and respect the mode split") {
  for (int n = 1; n <= 3; ++n) {
    for (int m = 2; m <= 6; ++m) {
      const auto basis = enumerate_basis(n, m);
      for (int ma = 1; ma < m; ++ma) {
        const auto d = sector_split(basis, ma);
        std::set<std::size_t> seen;
        for (const Sector& s : d->sectors()) {
          CHECK(s.alice_dim() == static_cast<std::size_t>(oracle::g(s.alice_photons, ma)));
          CHECK(s.bob_dim() == static_cast<std::size_t>(oracle::g(n - s.alice_photons, m - ma)));
          for (std::size_t a = 0; a < s.alice_dim(); ++a) {
            for (std::size_t b = 0; b < s.bob_dim(); ++b) {
              const std::size_t full = s.full_index(a, b);
              seen.insert(full);
              const Occupation& occ = basis->state(full);
              int na = 0;
              for (int i = 0; i < ma; ++i) na += occ[static_cast<std::size_t>(i)];
              CHECK(na == s.alice_photons);
              const auto& loc = d->locate(full);
              CHECK(loc.sector == s.alice_photons);
              CHECK(loc.alice == a);
              CHECK(loc.bob == b);
            }
          }
        }
        CHECK(seen.size() == basis->size());
      }
    }
  }
}

TEST_CASE("sector split rejects splits that leave a party without modes") {
  const auto basis = enumerate_basis(2, 4);
  CHECK(code_of([&] { sector_split(basis, 0); }) == ErrorCode::InvalidModeSplit);
  CHECK(code_of([&] { sector_split(basis, 4); }) == ErrorCode::InvalidModeSplit);
  CHECK(code_of([&] { sector_split(basis, -1); }) == ErrorCode::InvalidModeSplit);
}

TEST_CASE("error codes have stable names") {
  CHECK(std::string(to_string(ErrorCode::InvalidModeSplit)) == "invalid-mode-split");
  CHECK(std::string(to_string(ErrorCode::Overflow)) == "overflow");
}
