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

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lincap/fock.hpp"
#include "lincap/multiphoton.hpp"
#include "lincap/numerics.hpp"
#include "lincap/types.hpp"

namespace lincap {

/// Shared initial state, one unitary per symbol on Alice's modes (the first is
/// the identity) and the symbol probabilities.
struct Codebook {
  StateVector psi1;
  std::vector<ModeUnitary> unitaries;
  std::vector<double> probabilities;

  std::size_t num_symbols() const noexcept { return unitaries.size(); }
};

/// Throws ErrorCode::InvalidArgument on a malformed codebook.
void validate_codebook(const Codebook& codebook, const SectorDecomposition& decomposition);

/// The code states psi_x = lift(U_x) psi1 as columns.
CMatrix codebook_states(const Codebook& codebook, std::shared_ptr<const SectorDecomposition> decomposition);

/// rho = sum_x p_x |psi_x><psi_x|.
CMatrix density_matrix(const Codebook& codebook, std::shared_ptr<const SectorDecomposition> decomposition);

/// G_ij = <psi_i|psi_j>.
CMatrix gram_matrix(const Codebook& codebook, std::shared_ptr<const SectorDecomposition> decomposition);

/// -sum_k l_k log2 l_k with eigenvalues clamped to [0, 1] and 0 log 0 = 0.
double entropy_from_eigenvalues(const RVector& eigenvalues);

/// Von Neumann entropy in bits. Throws ErrorCode::TraceViolation when
/// |tr rho - 1| > 1e-8.
double von_neumann_entropy(const CMatrix& rho);

/// dS/dp_x = <psi_x| -(log2 rho + 1/ln 2) |psi_x>, the entropy's sensitivity to
/// each symbol probability.
RVector entropy_probability_gradient(const Codebook& codebook,
                                     std::shared_ptr<const SectorDecomposition> decomposition);

/// Real parametrization of a codebook and S(rho) with its analytic gradient.
///
/// Layout: [Re z, Im z] for the unnormalized initial state (psi1 = z/|z|),
/// then M_A^2 reals per symbol x >= 2 for an anti-Hermitian generator H_x
/// (U_x = exp(H_x)), then optionally one logit per symbol (p = softmax).
class EntropyObjective {
 public:
  EntropyObjective(std::shared_ptr<const SectorDecomposition> decomposition, int num_symbols,
                   bool free_probabilities = false);
  ~EntropyObjective();
  EntropyObjective(EntropyObjective&&) noexcept;
  EntropyObjective& operator=(EntropyObjective&&) noexcept;

  std::size_t num_parameters() const noexcept;
  int num_symbols() const noexcept;
  bool free_probabilities() const noexcept;
  const std::shared_ptr<const SectorDecomposition>& decomposition() const noexcept;

  /// Entropy in bits.
  double value(const RVector& params) const;
  /// Entropy in bits; writes dS/dparams into gradient.
  double value_and_gradient(const RVector& params, RVector& gradient) const;

  Codebook decode(const RVector& params) const;
  /// Inverse of decode up to the normalization of z. Codebook sizes must match.
  RVector encode(const Codebook& codebook) const;
  RVector random_parameters(Rng& rng) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Anti-Hermitian generator from M^2 reals: H_kk = i h, and for k < l
/// H_kl = a + i b, H_lk = -a + i b.
CMatrix generator_from_parameters(const double* params, int modes);
void parameters_from_generator(const CMatrix& generator, double* params);

enum class OptimizerKind { Lbfgs, Momentum };
enum class ProbabilityMode { Uniform, Simplex };

const char* to_string(OptimizerKind kind) noexcept;
const char* to_string(ProbabilityMode mode) noexcept;

struct OptConfig {
  int restarts = 20;
  int max_iterations = 2000;
  double gradient_tolerance = 1e-7;
  OptimizerKind optimizer = OptimizerKind::Lbfgs;
  ProbabilityMode probabilities = ProbabilityMode::Uniform;
  std::uint64_t seed = 42;
  int threads = 0;
  /// Skip remaining restarts once S reaches min(log2 |X|, C) within this margin.
  /// The restart that gets there first (lowest index) is returned.
  bool stop_at_bound = true;
  double bound_margin = 1e-9;
};

struct OptResult {
  double s_max = 0.0;
  Codebook codebook;
  CMatrix gram;
  int restarts_used = 0;
  bool converged = false;
  std::vector<double> trajectory;  // entropy per iteration of the returned restart
  int best_restart = 0;
};

/// Maximizes S(rho) over psi1 and U_2..U_|X| (and p when configured).
/// Restart r starts from derive_seed(seed, r); a warm start, when given,
/// replaces restart 0's starting point (extra symbols get fresh Haar unitaries).
OptResult maximize_entropy(int photons, int modes, int alice_modes, int num_symbols, const OptConfig& config,
                           const Codebook* warm_start = nullptr);

struct SweepPoint {
  int num_symbols = 0;
  double s_max = 0.0;
  double log2_symbols = 0.0;
  double capacity_bits = 0.0;
  bool converged = false;
  int restarts_used = 0;
};

struct SweepOptions {
  bool warm_start = true;
};

/// S_max for |X| = x_min..x_max. Each |X| uses derive_seed(seed, |X|) as its
/// master seed; with warm starts, restart 0 continues from the previous |X|'s
/// best codebook plus one fresh unitary.
std::vector<SweepPoint> symbol_sweep(int photons, int modes, int alice_modes, int x_min, int x_max,
                                     const OptConfig& config, const SweepOptions& options = {});

std::string symbol_sweep_csv(const std::vector<SweepPoint>& points);

}  // namespace lincap
