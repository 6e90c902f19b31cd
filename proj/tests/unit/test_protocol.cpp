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
#include <numbers>

#include "lincap/error.hpp"
#include "lincap/protocol.hpp"
#include "lincap/spanrank.hpp"
#include "oracles.hpp"

using namespace lincap;
namespace pr = lincap::protocol;

TEST_CASE("initial state layout follows the basis order") {
  pr::Params p;
  p.c[0] = 1.0;
  const auto basis = enumerate_basis(2, 4);
  const StateVector psi = pr::build_initial_state(p, basis);
  CHECK(basis->state(0) == Occupation{2, 0, 0, 0});
  CHECK(std::abs(psi.amplitudes(0) - 1.0) < 1e-15);
  CHECK(psi.amplitudes.tail(9).norm() == 0.0);

  p.c[3] = 0.5;
  p.d[3] = 1.0;
  const StateVector psi2 = pr::build_initial_state(p, basis);
  CHECK(std::abs(psi2.amplitudes(static_cast<Eigen::Index>(basis->index_of({1, 0, 0, 1}))) -
                 std::polar(0.5, 1.0)) < 1e-15);

  CHECK_THROWS_AS(pr::build_initial_state(p, enumerate_basis(2, 5)), Error);
}

TEST_CASE("default family has per-sector Schmidt ranks 1, 2, 1") {
  auto d = sector_split(enumerate_basis(2, 4), 2);
  const StateVector psi = pr::build_initial_state(pr::default_params(), d->basis_ptr());
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sector_schmidt_ranks(psi, *d) == std::vector<int>{1, 2, 1});
}

TEST_CASE("Alice's operations") {
  const pr::Params p = pr::default_params();
  CHECK((pr::alice_unitary(1, p).matrix() - CMatrix::Identity(2, 2)).norm() == 0.0);
  CHECK((pr::alice_unitary(2, p).matrix() + CMatrix::Identity(2, 2)).norm() == 0.0);
  const CMatrix u4 = pr::alice_unitary(4, p).matrix();
  CHECK(std::abs(u4(0, 0) - Complex(0.0, std::sqrt(1.0 / 3.0))) < 1e-15);
  CHECK(std::abs(u4(1, 1) - Complex(0.0, -std::sqrt(1.0 / 3.0))) < 1e-15);
  CHECK(std::abs(u4(1, 0) - std::sqrt(2.0 / 3.0) * std::polar(1.0, std::numbers::pi / 3.0)) < 1e-15);
  CHECK(std::abs(u4(0, 1) + std::sqrt(2.0 / 3.0) * std::polar(1.0, -std::numbers::pi / 3.0)) < 1e-15);
  for (int x = 1; x <= 8; ++x) CHECK(unitarity_defect(pr::alice_unitary(x, p).matrix()) < 1e-12);
  for (int x : {0, 9, -3}) {
    try {
      pr::alice_unitary(x, p);
      FAIL("expected index error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::IndexOutOfRange);
    }
  }
  for (int x = 1; x <= 8; ++x) {
    CHECK((pr::symbol_mode_matrix(x, p).matrix() - pr::alice_unitary(x, p).matrix().transpose()).norm() == 0.0);
  }
  pr::Params q = p;
  q.q3 = 0.7;
  CHECK(pr::rotation_phase(q, 3) == doctest::Approx(0.7));
  CHECK(pr::rotation_phase(q, 8) == doctest::Approx(0.7 + 5.0 * std::numbers::pi / 3.0));
}

TEST_CASE("constraint residuals") {
  CHECK(pr::check_constraints(pr::default_params()).max_abs() < 1e-12);
  CHECK(pr::check_constraints(pr::default_params()).valid());

  pr::Params broken = pr::default_params();
  broken.c[2] = broken.c[3] = 0.0;
  CHECK(pr::check_constraints(broken).values[3] == doctest::Approx(-0.25));

  // Any odd multiple of pi satisfies the phase condition.
  pr::Params wrapped = pr::default_params();
  wrapped.d[2] = -3.0 * std::numbers::pi;
  CHECK(std::abs(pr::check_constraints(wrapped).values[5]) < 1e-12);
  wrapped.d[2] = 2.0 * std::numbers::pi;
  CHECK(std::abs(pr::check_constraints(wrapped).values[5]) == doctest::Approx(std::numbers::pi));

  Rng rng(1);
  pr::Params random;
  for (auto& c : random.c) c = rng.uniform();
  for (auto& d : random.d) d = rng.uniform();
  CHECK_FALSE(pr::check_constraints(random).valid());
}

TEST_CASE("default family verifies") {
  const pr::Verification v = pr::verify(pr::default_params());
  CHECK(v.pass);
  CHECK(v.max_off_diagonal < 1e-10);
  CHECK(std::abs(v.entropy_bits - 3.0) < 1e-9);
  CHECK(v.span_rank == 8);
  // Passive operations conserve Alice's photon number, so the mean follows
  // from the amplitude constraints: 2 * 3/8 + 1 * (1/4 + 1/4).
  CHECK(v.mean_alice_photons == doctest::Approx(1.25).epsilon(1e-12));
  const std::string report = pr::format_report(v);
  CHECK(report.find("PASS") != std::string::npos);
  CHECK(report.find("3.000000000000") != std::string::npos);
}

TEST_CASE("breaking the phase condition breaks orthogonality") {
  pr::Params p = pr::default_params();
  p.d[2] = 0.0;
  const pr::Verification v = pr::verify(p);
  CHECK_FALSE(v.pass);
  CHECK(v.max_off_diagonal > 1e-3);
}

TEST_CASE("tolerance semantics with a slightly perturbed state") {
  pr::Params p = pr::default_params();
  p.d[2] += 1e-5;
  const pr::Verification strict = pr::verify(p, 1e-10);
  const pr::Verification loose = pr::verify(p, 1e-3);
  CHECK_FALSE(strict.pass);
  CHECK(strict.max_off_diagonal < 1e-4);
  CHECK(loose.max_off_diagonal == strict.max_off_diagonal);
  CHECK(std::abs(loose.entropy_bits - 3.0) < 1e-6);
}

TEST_CASE("randomized solver returns constraint-satisfying parameters") {
  Rng rng(99);
  for (int t = 0; t < 10; ++t) {
    const pr::Params p = pr::solve_params(rng);
    CHECK(pr::check_constraints(p).max_abs() < 1e-12);
    for (double c : p.c) CHECK(c >= 0.0);
    const pr::Verification v = pr::verify(p, 1e-7);
    CHECK(v.pass);
  }
}

TEST_CASE("codebook export of the protocol") {
  const Codebook cb = pr::to_codebook(pr::default_params());
  CHECK(cb.num_symbols() == 8);
  auto d = sector_split(cb.psi1.basis, 2);
  CHECK(von_neumann_entropy(density_matrix(cb, d)) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("parameter JSON round trip and errors") {
  Rng rng(5);
  const pr::Params p = pr::solve_params(rng);
  const pr::Params q = pr::params_from_json(pr::params_to_json(p));
  for (std::size_t k = 0; k < 10; ++k) {
    CHECK(q.c[k] == p.c[k]);
    CHECK(q.d[k] == p.d[k]);
  }
  CHECK(q.q3 == p.q3);
  CHECK_THROWS_AS(pr::params_from_json("{"), Error);
  CHECK_THROWS_AS(pr::params_from_json(R"({"c":[1],"d":[0]})"), Error);
  CHECK_THROWS_AS(pr::params_from_json(R"({"c":[-1,0,0,0,0,0,0,0,0,0],"d":[0,0,0,0,0,0,0,0,0,0]})"), Error);
}
