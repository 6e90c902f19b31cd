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

#include "lincap/spanrank.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "lincap/capacity.hpp"
#include "lincap/error.hpp"

namespace lincap {

StateVector random_initial_state(const SectorDecomposition& decomposition, Rng& rng) {
  const auto dim = static_cast<Eigen::Index>(decomposition.basis().size());
  CVector amps(dim);
  for (Eigen::Index i = 0; i < dim; ++i) amps(i) = rng.complex_normal();
  amps /= amps.norm();
  return {decomposition.basis_ptr(), std::move(amps)};
}

std::vector<int> sector_schmidt_ranks(const StateVector& psi, const SectorDecomposition& decomposition,
                                      double rel_tol) {
  std::vector<int> ranks;
  for (const Sector& sec : decomposition.sectors()) {
    CMatrix block(static_cast<Eigen::Index>(sec.alice_dim()), static_cast<Eigen::Index>(sec.bob_dim()));
    for (std::size_t a = 0; a < sec.alice_dim(); ++a) {
      for (std::size_t b = 0; b < sec.bob_dim(); ++b) {
        block(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            psi.amplitudes(static_cast<Eigen::Index>(sec.full_index(a, b)));
      }
    }
    ranks.push_back(block.norm() == 0.0 ? 0 : numerical_rank(block, rel_tol));
  }
  return ranks;
}

SpanEstimate estimate_span(int photons, int modes, int alice_modes, const SpanOptions& options) {
  const std::uint64_t bound = span_bound(photons, modes, alice_modes);
  auto decomposition = sector_split(enumerate_basis(photons, modes), alice_modes);

  const int samples = options.num_samples > 0 ? options.num_samples : static_cast<int>(std::max(2 * bound, bound + 8));
  if (static_cast<std::uint64_t>(samples) < bound + 8) {
    throw Error(ErrorCode::InvalidArgument, "need at least bound + 8 = " + std::to_string(bound + 8) +
                                                " samples, got " + std::to_string(samples));
  }

  StateVector psi1;
  SpanEstimate est;
  if (options.initial_state) {
    psi1 = *options.initial_state;
    if (!psi1.basis || !psi1.basis->same_space(decomposition->basis())) {
      throw Error(ErrorCode::BasisMismatch, "supplied initial state has the wrong basis");
    }
    est.initial_state_mode = InitialStateMode::UserSupplied;
  } else {
    Rng rng(derive_seed(options.seed, 0));
    psi1 = random_initial_state(*decomposition, rng);
  }

  CMatrix columns(psi1.amplitudes.size(), samples);
  parallel_for(static_cast<std::size_t>(samples), options.threads, [&](std::size_t k) {
    Rng rng(derive_seed(options.seed, k + 1));
    const FockOperator op = lift_alice_unitary(haar_unitary(alice_modes, rng), decomposition);
    CVector out;
    op.apply_to(psi1.amplitudes, out);
    columns.col(static_cast<Eigen::Index>(k)) = out;
  });

  const RankInfo info = numerical_rank_info(columns, options.rank_tolerance);
  est.rank = info.rank;
  est.num_samples = samples;
  est.singular_gap = info.gap;
  est.seed = options.seed;
  est.bound = bound;
  if (options.strict && !est.confident()) {
    throw Error(ErrorCode::Inconclusive, "singular gap " + std::to_string(info.gap) +
                                             " below 1e3; increase the sample count");
  }
  return est;
}

std::vector<SpanSweepRow> span_sweep(int photons, int modes, const SpanOptions& options) {
  if (dim_fock(photons, modes) > 10'000) {
    throw Error(ErrorCode::DimensionCap, "span sweep is limited to d_H <= 10^4");
  }
  std::vector<SpanSweepRow> rows;
  for (int ma = 1; ma <= modes - 1; ++ma) {
    SpanSweepRow row;
    row.photons = photons;
    row.modes = modes;
    row.alice_modes = ma;
    row.estimate = estimate_span(photons, modes, ma, options);
    row.match = static_cast<std::uint64_t>(row.estimate.rank) == row.estimate.bound;
    rows.push_back(row);
  }
  return rows;
}

std::string span_sweep_csv(const std::vector<SpanSweepRow>& rows) {
  std::ostringstream out;
  out << "N,M,M_A,rank,bound,match,singular_gap\n";
  for (const SpanSweepRow& r : rows) {
    out << r.photons << ',' << r.modes << ',' << r.alice_modes << ',' << r.estimate.rank << ','
        << r.estimate.bound << ',' << (r.match ? "true" : "false") << ',';
    if (std::isinf(r.estimate.singular_gap)) {
      out << "inf";
    } else {
      out << std::setprecision(6) << std::scientific << r.estimate.singular_gap << std::defaultfloat;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace lincap
