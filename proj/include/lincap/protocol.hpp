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

#include <array>
#include <optional>
#include <string>

#include "lincap/entropyopt.hpp"
#include "lincap/fock.hpp"
#include "lincap/multiphoton.hpp"
#include "lincap/numerics.hpp"

namespace lincap {

/// The eight-symbol code for two photons in four modes with Alice holding two.
namespace protocol {

inline constexpr int kPhotons = 2;
inline constexpr int kModes = 4;
inline constexpr int kAliceModes = 2;
inline constexpr int kSymbols = 8;
inline constexpr double kDefaultTolerance = 1e-10;

/// psi1 = sum_k c_k e^{i d_k} |k> over the descending-lexicographic basis,
/// and the phase q3 of the rotation family.
struct Params {
  std::array<double, 10> c{};
  std::array<double, 10> d{};
  double q3 = 0.0;
};

/// q_x = q3 + (pi/3)(x - 3).
double rotation_phase(const Params& params, int symbol);

StateVector build_initial_state(const Params& params, std::shared_ptr<const FockBasis> basis);

/// U_1 = I, U_2 = -I, and for x = 3..8
/// [[ i(-1)^x sqrt(1/3), -sqrt(2/3) e^{-i q_x} ], [ sqrt(2/3) e^{i q_x}, i(-1)^{x+1} sqrt(1/3) ]].
ModeUnitary alice_unitary(int symbol, const Params& params);

/// The same operation as a mode matrix in the lift's convention. The
/// protocol matrices act on creation operators, a_i^dag -> sum_j u_ij a_j^dag,
/// which sends |i> to sum_j u_ij |j>: the transpose of the lift's reading.
ModeUnitary symbol_mode_matrix(int symbol, const Params& params);

struct Residuals {
  static constexpr int kCount = 9;
  /// a..h in order, then the normalization sum c^2 - 1.
  std::array<double, kCount> values{};
  static const std::array<const char*, kCount>& names();

  double max_abs() const;
  bool valid(double tolerance = 1e-9) const { return max_abs() < tolerance; }
};

Residuals check_constraints(const Params& params);

/// c2 = c5 = c9 = c10 = 0, c1 = sqrt(3/8), c3 = c4 = c6 = c7 = c8 = sqrt(1/8),
/// d3 = pi, every other phase and q3 zero.
Params default_params();

/// A random member of the constraint set: perturb the default family and
/// project back by Gauss-Newton on the residuals. Throws
/// ErrorCode::SolverFailure if the projection does not reach 1e-12.
Params solve_params(Rng& rng, double spread = 0.3);

struct Verification {
  Residuals residuals;
  CMatrix gram;
  double max_off_diagonal = 0.0;
  double entropy_bits = 0.0;
  int span_rank = 0;
  /// Expected photon number in Alice's modes averaged over the eight states.
  double mean_alice_photons = 0.0;
  double tolerance = kDefaultTolerance;
  bool pass = false;
};

/// Lifts U_1..U_8 through the generic multiphoton map and checks the Gram
/// matrix. Passes iff max off-diagonal < tolerance and |S - 3| < 1e-9.
Verification verify(const Params& params, double tolerance = kDefaultTolerance);

/// The verified code as a uniform-probability codebook.
Codebook to_codebook(const Params& params);

/// Fixed 12-digit report: residual table, Gram matrix, entropy, verdict.
std::string format_report(const Verification& v);

std::string params_to_json(const Params& params);
/// {"c": [10 reals], "d": [10 reals], "q3": real}. Throws ErrorCode::Parse.
Params params_from_json(const std::string& text);

}  // namespace protocol

}  // namespace lincap
