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

// Reference implementations that share no code with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

// C(n, k) in 128-bit arithmetic, exact while the result fits.
inline unsigned __int128 binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline unsigned __int128 g(int photons, int modes) {
  return binomial(static_cast<unsigned>(photons + modes - 1), static_cast<unsigned>(photons));
}

// Sum over all permutations; fine up to k = 8 or so.
inline Complex permanent(const CMatrix& a) {
  const auto k = static_cast<int>(a.rows());
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  Complex total = 0.0;
  do {
    Complex term = 1.0;
    for (int i = 0; i < k; ++i) term *= a(i, p[static_cast<std::size_t>(i)]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// All occupation tuples by recursive distribution, sorted descending.
inline std::vector<std::vector<int>> fock_states(int photons, int modes) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(modes), 0);
  std::function<void(int, int)> rec = [&](int mode, int left) {
    if (mode == modes - 1) {
      cur[static_cast<std::size_t>(mode)] = left;
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[static_cast<std::size_t>(mode)] = k;
      rec(mode + 1, left - k);
    }
  };
  rec(0, photons);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// Unitary by modified Gram-Schmidt on Gaussian columns.
inline CMatrix random_unitary(int m, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  CMatrix a(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) a(i, j) = Complex(nd(gen), nd(gen));
  }
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < j; ++k) a.col(j) -= a.col(k).dot(a.col(j)) * a.col(k);
    a.col(j) /= a.col(j).norm();
  }
  return a;
}

inline Eigen::VectorXcd random_state(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(nd(gen), nd(gen));
  return v / v.norm();
}

inline double factorial(int n) { return std::tgamma(n + 1.0); }

// Entropy in bits of a Hermitian PSD matrix through its eigenvalues.
inline double entropy_bits(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double l = es.eigenvalues()(k);
    if (l > 1e-15) s -= l * std::log2(l);
  }
  return s;
}

}  // namespace oracle
