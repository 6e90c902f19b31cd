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

#include "lincap/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "lincap/error.hpp"

namespace lincap {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t task) noexcept {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (task + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unitarity_defect(const CMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  const CMatrix d = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

ModeUnitary::ModeUnitary(CMatrix matrix, double tolerance) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
    throw Error(ErrorCode::InvalidArgument, "mode unitary must be a non-empty square matrix");
  }
  const double defect = unitarity_defect(matrix_);
  if (!(defect <= tolerance)) {
    throw Error(ErrorCode::InvalidArgument,
                "matrix is not unitary (max |U^dag U - I| = " + std::to_string(defect) + ")");
  }
}

ModeUnitary ModeUnitary::identity(int modes) {
  return ModeUnitary(CMatrix::Identity(modes, modes));
}

HermitianSpectrum eigh(const CMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::InvalidArgument, "eigh needs a square matrix");
  const CMatrix sym = (a + a.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NonConvergence, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RankInfo numerical_rank_info(const CMatrix& columns, double rel_tol) {
  if (columns.size() == 0) throw Error(ErrorCode::InvalidArgument, "rank of an empty matrix");
  Eigen::BDCSVD<CMatrix> svd(columns);
  RankInfo info;
  info.singular_values = svd.singularValues();
  const RVector& s = info.singular_values;
  const double smax = s.size() > 0 ? s(0) : 0.0;
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > rel_tol * smax) ++rank;
  }
  info.rank = rank;
  if (rank == 0) {
    info.gap = 0.0;
  } else if (rank >= s.size() || s(rank) == 0.0) {
    info.gap = std::numeric_limits<double>::infinity();
  } else {
    info.gap = s(rank - 1) / s(rank);
  }
  return info;
}

int numerical_rank(const CMatrix& columns, double rel_tol) {
  return numerical_rank_info(columns, rel_tol).rank;
}

ModeUnitary expm_antihermitian(const CMatrix& generator) {
  if (generator.rows() != generator.cols()) {
    throw Error(ErrorCode::InvalidArgument, "generator must be square");
  }
  const double skew = (generator + generator.adjoint()).cwiseAbs().maxCoeff();
  if (skew > 1e-10 * std::max(1.0, generator.cwiseAbs().maxCoeff())) {
    throw Error(ErrorCode::InvalidArgument, "generator is not anti-Hermitian");
  }
  // H = -i (iH), iH = V diag(mu) V^dag  =>  exp(H) = V diag(e^{-i mu}) V^dag
  const HermitianSpectrum eig = eigh(Complex(0.0, 1.0) * generator);
  CVector phases(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::polar(1.0, -eig.eigenvalues(k));
  CMatrix u = eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
  return ModeUnitary(std::move(u), ModeUnitary::Unchecked{});
}

CMatrix logm_unitary(const ModeUnitary& u) {
  // A unitary is normal, so its complex Schur form is diagonal.
  Eigen::ComplexSchur<CMatrix> schur(u.matrix());
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::NonConvergence, "Schur decomposition did not converge");
  }
  const CMatrix& q = schur.matrixU();
  const CMatrix& t = schur.matrixT();
  CVector logs(t.rows());
  for (Eigen::Index k = 0; k < t.rows(); ++k) logs(k) = Complex(0.0, std::arg(t(k, k)));
  CMatrix h = q * logs.asDiagonal() * q.adjoint();
  return (h - h.adjoint()) * 0.5;
}

ModeUnitary haar_unitary(int modes, Rng& rng) {
  if (modes < 1) throw Error(ErrorCode::InvalidArgument, "haar_unitary needs m >= 1");
  CMatrix z(modes, modes);
  for (int c = 0; c < modes; ++c) {
    for (int r = 0; r < modes; ++r) z(r, c) = rng.complex_normal() / std::sqrt(2.0);
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(modes, modes);
  const CMatrix& r = qr.matrixQR();
  for (int k = 0; k < modes; ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    q.col(k) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
  }
  return ModeUnitary(std::move(q), 1e-10);
}

ModeUnitary haar_unitary(int modes, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary(modes, rng);
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace lincap
