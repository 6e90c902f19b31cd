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

#include "lincap/capacity.hpp"
#include "lincap/error.hpp"
#include "lincap/spanrank.hpp"
#include "oracles.hpp"

using namespace lincap;

TEST_CASE("span rank of the smallest instances") {
  const SpanEstimate e = estimate_span(1, 2, 1);
  CHECK(e.rank == 2);
  CHECK(e.bound == 2);
  CHECK(e.confident());
  CHECK(e.num_samples == 10);
  CHECK(e.seed == 42);
}

TEST_CASE("span rank equals the bound on published instances") {
  for (auto [n, m, ma, expected] : {std::tuple{2, 4, 2, 8}, std::tuple{3, 5, 2, 18}, std::tuple{3, 6, 3, 38}}) {
    const SpanEstimate e = estimate_span(n, m, ma);
    CHECK(e.rank == expected);
    CHECK(e.bound == static_cast<std::uint64_t>(expected));
    CHECK(e.singular_gap > 1e3);
  }
}

TEST_CASE("sample count validation") {
  SpanOptions o;
  o.num_samples = 8 + 7;  // bound + 7 for (2,4,2)
  CHECK_THROWS_AS(estimate_span(2, 4, 2, o), Error);
  o.num_samples = 16;
  CHECK(estimate_span(2, 4, 2, o).rank == 8);
  CHECK_THROWS_AS(estimate_span(2, 4, 4), Error);
}

TEST_CASE("result does not depend on the thread count") {
  SpanOptions a;
  a.threads = 1;
  SpanOptions b;
  b.threads = 4;
  const SpanEstimate ea = estimate_span(3, 6, 2, a);
  const SpanEstimate eb = estimate_span(3, 6, 2, b);
  CHECK(ea.rank == eb.rank);
  CHECK(ea.singular_gap == eb.singular_gap);
}

TEST_CASE("a product initial state reaches less than the bound") {
  // |1,0 ; 1,0>: Alice's sector N_A = 1 has Schmidt rank 1, so the lifted
  // span is the single-photon orbit of Alice's modes, dimension 2.
  const auto basis = enumerate_basis(2, 4);
  SpanOptions o;
  StateVector psi{basis, CVector::Zero(static_cast<Eigen::Index>(basis->size()))};
  psi.amplitudes(static_cast<Eigen::Index>(basis->index_of({1, 0, 1, 0}))) = 1.0;
  o.initial_state = psi;
  const SpanEstimate e = estimate_span(2, 4, 2, o);
  CHECK(e.rank == 2);
  CHECK(e.initial_state_mode == InitialStateMode::UserSupplied);
}

TEST_CASE("strict mode raises on an indecisive gap") {
  // A rank tolerance sitting between two genuine singular values makes the
  // gap small; strict mode must refuse to answer.
  SpanOptions o;
  o.rank_tolerance = 0.5;
  o.strict = false;
  const SpanEstimate loose = estimate_span(2, 4, 2, o);
  CHECK_FALSE(loose.confident());
  o.strict = true;
  try {
    estimate_span(2, 4, 2, o);
    FAIL("expected inconclusive");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Inconclusive);
  }
}

TEST_CASE("random initial states have full sector Schmidt rank") {
  const auto d = sector_split(enumerate_basis(3, 5), 2);
  Rng rng(3);
  const StateVector psi = random_initial_state(*d, rng);
  CHECK(psi.norm() == doctest::Approx(1.0));
  const auto ranks = sector_schmidt_ranks(psi, *d);
  REQUIRE(ranks.size() == 4);
  for (std::size_t k = 0; k < ranks.size(); ++k) {
    const auto& s = d->sectors()[k];
    CHECK(ranks[k] == static_cast<int>(std::min(s.alice_dim(), s.bob_dim())));
  }
}

TEST_CASE("span sweep rows and CSV") {
  SpanOptions o;
  const auto rows = span_sweep(2, 4, o);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.match);
    CHECK(static_cast<std::uint64_t>(r.estimate.rank) == span_bound(2, 4, r.alice_modes));
  }
  const std::string csv = span_sweep_csv(rows);
  CHECK(csv.rfind("N,M,M_A,rank,bound,match,singular_gap\n", 0) == 0);
  CHECK(csv.find("2,4,2,8,8,true,") != std::string::npos);
  CHECK_THROWS_AS(span_sweep(6, 12, o), Error);
}
