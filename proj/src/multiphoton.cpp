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

#include "lincap/multiphoton.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>

#include "lincap/error.hpp"

namespace lincap {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double occupation_norm(const Occupation& occ) {
  double f = 1.0;
  for (int n : occ) f *= factorial(n);
  return f;
}

void require_alice_dimension(const ModeUnitary& u, const SectorDecomposition& d) {
  if (u.dimension() != d.alice_modes()) {
    throw Error(ErrorCode::ModeCountMismatch,
                "unitary acts on " + std::to_string(u.dimension()) + " modes but Alice owns " +
                    std::to_string(d.alice_modes()));
  }
}

// Ryser/Gray permanent of a row-major k x k buffer.
Complex ryser(const Complex* a, int k) {
  if (k == 0) return {1.0, 0.0};
  if (k == 1) return a[0];
  Complex row_sums[kMaxPermanentSize];
  for (int i = 0; i < k; ++i) row_sums[i] = Complex(0.0, 0.0);
  // Per(A) = (-1)^k sum_S (-1)^{|S|} prod_i sum_{j in S} a_ij, subsets visited in Gray order.
  Complex total(0.0, 0.0);
  std::uint32_t gray = 0;
  const std::uint32_t subsets = 1u << k;
  for (std::uint32_t step = 1; step < subsets; ++step) {
    const int flip = std::countr_zero(step);
    const std::uint32_t bit = 1u << flip;
    gray ^= bit;
    const double sign = (gray & bit) ? 1.0 : -1.0;
    Complex prod(1.0, 0.0);
    for (int i = 0; i < k; ++i) {
      row_sums[i] += sign * a[i * k + flip];
      prod *= row_sums[i];
    }
    total += (std::popcount(gray) % 2 == 1) ? -prod : prod;
  }
  return (k % 2 == 1) ? -total : total;
}

}  // namespace

Complex permanent(const CMatrix& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw Error(ErrorCode::InvalidArgument, "permanent needs a square matrix");
  }
  const int k = static_cast<int>(matrix.rows());
  if (k > kMaxPermanentSize) {
    throw Error(ErrorCode::SizeCap, "permanent size " + std::to_string(k) + " exceeds cap " +
                                        std::to_string(kMaxPermanentSize));
  }
  std::vector<Complex> buffer(static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) buffer[static_cast<std::size_t>(i * k + j)] = matrix(i, j);
  }
  return ryser(buffer.data(), k);
}

Complex permanent_repeated(const CMatrix& u, std::span<const int> row_counts,
                           std::span<const int> col_counts) {
  const int rows = std::accumulate(row_counts.begin(), row_counts.end(), 0);
  const int cols = std::accumulate(col_counts.begin(), col_counts.end(), 0);
  if (rows != cols) throw Error(ErrorCode::InvalidArgument, "repetition counts differ in total");
  CMatrix expanded(rows, cols);
  int r = 0;
  for (std::size_t i = 0; i < row_counts.size(); ++i) {
    for (int ri = 0; ri < row_counts[i]; ++ri, ++r) {
      int c = 0;
      for (std::size_t j = 0; j < col_counts.size(); ++j) {
        for (int cj = 0; cj < col_counts[j]; ++cj, ++c) {
          expanded(r, c) = u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
      }
    }
  }
  return permanent(expanded);
}

FockOperator::FockOperator(std::shared_ptr<const SectorDecomposition> decomposition,
                           std::vector<CMatrix> blocks)
    : decomposition_(std::move(decomposition)), blocks_(std::move(blocks)) {
  const auto sectors = decomposition_->sectors();
  if (blocks_.size() != sectors.size()) {
    throw Error(ErrorCode::InvalidArgument, "one block per sector is required");
  }
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    const auto dim = static_cast<Eigen::Index>(sectors[s].alice_dim());
    if (blocks_[s].rows() != dim || blocks_[s].cols() != dim) {
      throw Error(ErrorCode::InvalidArgument, "block shape does not match its sector");
    }
  }
}

void FockOperator::apply_to(const CVector& in, CVector& out) const {
  out.resize(in.size());
  const auto sectors = decomposition_->sectors();
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    const Sector& sec = sectors[s];
    const CMatrix& blk = blocks_[s];
    const std::size_t na = sec.alice_dim();
    const std::size_t nb = sec.bob_dim();
    for (std::size_t b = 0; b < nb; ++b) {
      for (std::size_t a = 0; a < na; ++a) {
        Complex acc(0.0, 0.0);
        for (std::size_t k = 0; k < na; ++k) {
          acc += blk(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k)) *
                 in(static_cast<Eigen::Index>(sec.full_index(k, b)));
        }
        out(static_cast<Eigen::Index>(sec.full_index(a, b))) = acc;
      }
    }
  }
}

void FockOperator::apply_adjoint_to(const CVector& in, CVector& out) const {
  out.resize(in.size());
  const auto sectors = decomposition_->sectors();
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    const Sector& sec = sectors[s];
    const CMatrix& blk = blocks_[s];
    const std::size_t na = sec.alice_dim();
    const std::size_t nb = sec.bob_dim();
    for (std::size_t b = 0; b < nb; ++b) {
      for (std::size_t a = 0; a < na; ++a) {
        Complex acc(0.0, 0.0);
        for (std::size_t k = 0; k < na; ++k) {
          acc += std::conj(blk(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(a))) *
                 in(static_cast<Eigen::Index>(sec.full_index(k, b)));
        }
        out(static_cast<Eigen::Index>(sec.full_index(a, b))) = acc;
      }
    }
  }
}

StateVector FockOperator::apply(const StateVector& psi) const {
  if (!psi.basis || !psi.basis->same_space(decomposition_->basis()) ||
      psi.amplitudes.size() != static_cast<Eigen::Index>(decomposition_->basis().size())) {
    throw Error(ErrorCode::BasisMismatch, "state and operator live on different Fock bases");
  }
  StateVector out{psi.basis, {}};
  apply_to(psi.amplitudes, out.amplitudes);
  return out;
}

StateVector FockOperator::apply_adjoint(const StateVector& psi) const {
  if (!psi.basis || !psi.basis->same_space(decomposition_->basis()) ||
      psi.amplitudes.size() != static_cast<Eigen::Index>(decomposition_->basis().size())) {
    throw Error(ErrorCode::BasisMismatch, "state and operator live on different Fock bases");
  }
  StateVector out{psi.basis, {}};
  apply_adjoint_to(psi.amplitudes, out.amplitudes);
  return out;
}

CMatrix FockOperator::dense() const {
  const auto dim = static_cast<Eigen::Index>(decomposition_->basis().size());
  CMatrix full = CMatrix::Zero(dim, dim);
  const auto sectors = decomposition_->sectors();
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    const Sector& sec = sectors[s];
    for (std::size_t b = 0; b < sec.bob_dim(); ++b) {
      for (std::size_t a = 0; a < sec.alice_dim(); ++a) {
        for (std::size_t k = 0; k < sec.alice_dim(); ++k) {
          full(static_cast<Eigen::Index>(sec.full_index(a, b)),
               static_cast<Eigen::Index>(sec.full_index(k, b))) =
              blocks_[s](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k));
        }
      }
    }
  }
  return full;
}

CMatrix lift_block(const CMatrix& u, const FockBasis& alice_basis) {
  CMatrix block;
  LiftPlan(alice_basis).lift_into(u, block);
  return block;
}

LiftPlan::LiftPlan(const FockBasis& alice_basis)
    : dim_(alice_basis.size()), photons_(alice_basis.photons()) {
  if (photons_ > kMaxPermanentSize) {
    throw Error(ErrorCode::SizeCap, "lift needs permanents larger than the size cap");
  }
  for (const Occupation& occ : alice_basis.states()) {
    std::vector<int> modes;
    for (std::size_t i = 0; i < occ.size(); ++i) {
      for (int r = 0; r < occ[i]; ++r) modes.push_back(static_cast<int>(i));
    }
    expanded_.push_back(std::move(modes));
    inv_sqrt_norm_.push_back(1.0 / std::sqrt(occupation_norm(occ)));
  }
}

void LiftPlan::lift_into(const CMatrix& u, CMatrix& block) const {
  const auto dim = static_cast<Eigen::Index>(dim_);
  block.resize(dim, dim);
  const int k = photons_;
  Complex buffer[kMaxPermanentSize * kMaxPermanentSize];
  for (std::size_t out = 0; out < dim_; ++out) {
    const std::vector<int>& rows = expanded_[out];
    for (std::size_t in = 0; in < dim_; ++in) {
      const std::vector<int>& cols = expanded_[in];
      for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) buffer[r * k + c] = u(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
      }
      block(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)) =
          ryser(buffer, k) * (inv_sqrt_norm_[out] * inv_sqrt_norm_[in]);
    }
  }
}

FockOperator lift_alice_unitary(const ModeUnitary& u,
                                std::shared_ptr<const SectorDecomposition> decomposition) {
  require_alice_dimension(u, *decomposition);
  std::vector<CMatrix> blocks;
  blocks.reserve(decomposition->sectors().size());
  for (const Sector& sec : decomposition->sectors()) {
    blocks.push_back(lift_block(u.matrix(), *sec.alice_basis));
  }
  return FockOperator(std::move(decomposition), std::move(blocks));
}

FockOperator lift_oracle_multinomial(const ModeUnitary& u,
                                     std::shared_ptr<const SectorDecomposition> decomposition) {
  require_alice_dimension(u, *decomposition);
  if (decomposition->basis().size() > 500) {
    throw Error(ErrorCode::SizeCap, "multinomial oracle is limited to d_H <= 500");
  }
  const CMatrix& mat = u.matrix();
  const int modes = u.dimension();
  std::vector<CMatrix> blocks;
  for (const Sector& sec : decomposition->sectors()) {
    const FockBasis& ab = *sec.alice_basis;
    const auto dim = static_cast<Eigen::Index>(ab.size());
    CMatrix block = CMatrix::Zero(dim, dim);
    for (Eigen::Index in = 0; in < dim; ++in) {
      const Occupation& n = ab.state(static_cast<std::size_t>(in));
      // Polynomial in creation operators, keyed by the monomial's exponent vector.
      std::map<Occupation, Complex> poly{{Occupation(static_cast<std::size_t>(modes), 0), Complex(1.0, 0.0)}};
      for (int j = 0; j < modes; ++j) {
        for (int rep = 0; rep < n[static_cast<std::size_t>(j)]; ++rep) {
          std::map<Occupation, Complex> next;
          for (const auto& [mono, coeff] : poly) {
            for (int i = 0; i < modes; ++i) {
              Occupation grown = mono;
              ++grown[static_cast<std::size_t>(i)];
              next[grown] += coeff * mat(i, j);
            }
          }
          poly = std::move(next);
        }
      }
      // prod (a_i^dag)^{m_i} |0> = sqrt(m!) |m>, and the input carries 1/sqrt(n!).
      const double in_norm = std::sqrt(occupation_norm(n));
      for (const auto& [mono, coeff] : poly) {
        const std::size_t out = ab.index_of(mono);
        block(static_cast<Eigen::Index>(out), in) += coeff * std::sqrt(occupation_norm(mono)) / in_norm;
      }
    }
    blocks.push_back(std::move(block));
  }
  return FockOperator(std::move(decomposition), std::move(blocks));
}

}  // namespace lincap
