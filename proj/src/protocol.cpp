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

#include "lincap/protocol.hpp"

#include <Eigen/QR>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "lincap/error.hpp"

namespace lincap::protocol {

namespace {

constexpr double kPi = std::numbers::pi;

// Signed distance of an angle from the nearest odd multiple of pi.
double odd_pi_offset(double angle) {
  const double shifted = std::remainder(angle - kPi, 2.0 * kPi);
  return shifted;
}

constexpr int kFree = 21;  // c1..c10, d1..d10, q3

Eigen::Matrix<double, kFree, 1> pack(const Params& p) {
  Eigen::Matrix<double, kFree, 1> v;
  for (int k = 0; k < 10; ++k) {
    v(k) = p.c[static_cast<std::size_t>(k)];
    v(10 + k) = p.d[static_cast<std::size_t>(k)];
  }
  v(20) = p.q3;
  return v;
}

Params unpack(const Eigen::Matrix<double, kFree, 1>& v) {
  Params p;
  for (int k = 0; k < 10; ++k) {
    p.c[static_cast<std::size_t>(k)] = v(k);
    p.d[static_cast<std::size_t>(k)] = v(10 + k);
  }
  p.q3 = v(20);
  return p;
}

Eigen::Matrix<double, Residuals::kCount, 1> residual_vector(const Params& p) {
  const Residuals r = check_constraints(p);
  Eigen::Matrix<double, Residuals::kCount, 1> v;
  for (int k = 0; k < Residuals::kCount; ++k) v(k) = r.values[static_cast<std::size_t>(k)];
  return v;
}

// Negative amplitudes become positive with a compensating pi phase. The pairs
// (c3, c7) and (c4, c6) share a sign on the constraint set, so constraint (f)
// moves by a multiple of 2 pi.
void make_amplitudes_nonnegative(Params& p) {
  for (std::size_t k = 0; k < 10; ++k) {
    if (p.c[k] < 0.0) {
      p.c[k] = -p.c[k];
      p.d[k] += kPi;
    }
  }
}

}  // namespace

double rotation_phase(const Params& params, int symbol) { return params.q3 + (kPi / 3.0) * (symbol - 3); }

StateVector build_initial_state(const Params& params, std::shared_ptr<const FockBasis> basis) {
  if (!basis || basis->photons() != kPhotons || basis->modes() != kModes) {
    throw Error(ErrorCode::BasisMismatch, "the protocol lives in the two-photon four-mode space");
  }
  CVector amps(static_cast<Eigen::Index>(basis->size()));
  for (std::size_t k = 0; k < 10; ++k) amps(static_cast<Eigen::Index>(k)) = std::polar(params.c[k], params.d[k]);
  return StateVector{std::move(basis), amps};
}

ModeUnitary alice_unitary(int symbol, const Params& params) {
  if (symbol < 1 || symbol > kSymbols) {
    throw Error(ErrorCode::IndexOutOfRange, "protocol symbol must be in 1..8, got " + std::to_string(symbol));
  }
  CMatrix u(2, 2);
  if (symbol == 1) {
    u.setIdentity();
  } else if (symbol == 2) {
    u = -CMatrix::Identity(2, 2);
  } else {
    const double q = rotation_phase(params, symbol);
    const double sign = symbol % 2 == 0 ? 1.0 : -1.0;
    const double a = std::sqrt(1.0 / 3.0);
    const double b = std::sqrt(2.0 / 3.0);
    u(0, 0) = Complex(0.0, sign * a);
    u(0, 1) = -b * std::polar(1.0, -q);
    u(1, 0) = b * std::polar(1.0, q);
    u(1, 1) = Complex(0.0, -sign * a);
  }
  return ModeUnitary(u, 1e-12);
}

ModeUnitary symbol_mode_matrix(int symbol, const Params& params) {
  return ModeUnitary(alice_unitary(symbol, params).matrix().transpose(), 1e-12);
}

const std::array<const char*, Residuals::kCount>& Residuals::names() {
  static const std::array<const char*, kCount> kNames = {
      "c1^2+c2^2+c5^2-3/8", "c3-c7", "c4-c6", "c3^2+c4^2-1/4", "c8^2+c9^2+c10^2-1/8",
      "d3+d7-d4-d6 (odd pi)", "cosine condition", "sine condition", "normalization"};
  return kNames;
}

double Residuals::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

Residuals check_constraints(const Params& p) {
  const auto& c = p.c;
  const auto& d = p.d;
  Residuals r;
  r.values[0] = c[0] * c[0] + c[1] * c[1] + c[4] * c[4] - 3.0 / 8.0;
  r.values[1] = c[2] - c[6];
  r.values[2] = c[3] - c[5];
  r.values[3] = c[2] * c[2] + c[3] * c[3] - 0.25;
  r.values[4] = c[7] * c[7] + c[8] * c[8] + c[9] * c[9] - 1.0 / 8.0;
  r.values[5] = odd_pi_offset(d[2] + d[6] - d[3] - d[5]);
  r.values[6] = c[0] * c[1] * std::cos(d[0] - d[1] - p.q3) - c[0] * c[4] * std::sin(d[0] - d[4] - 2.0 * p.q3) -
                c[1] * c[4] * std::cos(d[1] - d[4] - p.q3);
  r.values[7] = c[0] * c[1] * std::sin(d[0] - d[1] - p.q3) - c[0] * c[4] * std::cos(d[0] - d[4] - 2.0 * p.q3) -
                c[1] * c[4] * std::sin(d[1] - d[4] - p.q3);
  double norm = 0.0;
  for (double ck : c) norm += ck * ck;
  r.values[8] = norm - 1.0;
  return r;
}

Params default_params() {
  Params p;
  p.c[0] = std::sqrt(3.0 / 8.0);
  for (std::size_t k : {2, 3, 5, 6, 7}) p.c[k] = std::sqrt(1.0 / 8.0);
  p.d[2] = kPi;
  return p;
}

Params solve_params(Rng& rng, double spread) {
  constexpr int kAttempts = 20;
  constexpr int kIterations = 100;
  const Eigen::Matrix<double, kFree, 1> base = pack(default_params());
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Eigen::Matrix<double, kFree, 1> v = base;
    for (int k = 0; k < kFree; ++k) v(k) += spread * rng.normal();
    for (int it = 0; it < kIterations; ++it) {
      const auto r = residual_vector(unpack(v));
      if (r.cwiseAbs().maxCoeff() < 1e-14) break;
      Eigen::Matrix<double, Residuals::kCount, kFree> jac;
      constexpr double h = 1e-7;
      for (int k = 0; k < kFree; ++k) {
        Eigen::Matrix<double, kFree, 1> up = v;
        Eigen::Matrix<double, kFree, 1> dn = v;
        up(k) += h;
        dn(k) -= h;
        jac.col(k) = (residual_vector(unpack(up)) - residual_vector(unpack(dn))) / (2.0 * h);
      }
      const Eigen::Matrix<double, kFree, 1> step = jac.completeOrthogonalDecomposition().solve(r);
      if (!step.allFinite()) break;
      v -= step;
    }
    Params p = unpack(v);
    make_amplitudes_nonnegative(p);
    if (check_constraints(p).max_abs() < 1e-12) return p;
  }
  throw Error(ErrorCode::SolverFailure, "constraint projection did not converge");
}

Verification verify(const Params& params, double tolerance) {
  auto decomposition = sector_split(enumerate_basis(kPhotons, kModes), kAliceModes);
  const StateVector psi1 = build_initial_state(params, decomposition->basis_ptr());

  CMatrix states(psi1.amplitudes.size(), kSymbols);
  for (int x = 1; x <= kSymbols; ++x) {
    const FockOperator op = lift_alice_unitary(symbol_mode_matrix(x, params), decomposition);
    CVector out;
    op.apply_to(psi1.amplitudes, out);
    states.col(x - 1) = out;
  }

  Verification v;
  v.tolerance = tolerance;
  v.residuals = check_constraints(params);
  v.gram = states.adjoint() * states;
  for (int i = 0; i < kSymbols; ++i) {
    for (int j = 0; j < kSymbols; ++j) {
      if (i != j) v.max_off_diagonal = std::max(v.max_off_diagonal, std::abs(v.gram(i, j)));
    }
  }
  // The uniform mixture's spectrum is that of G/|X|, normalized by its trace.
  const double trace = v.gram.trace().real();
  RVector eig = eigh(v.gram).eigenvalues;
  v.entropy_bits = trace > 0.0 ? entropy_from_eigenvalues(eig / trace) : 0.0;
  v.span_rank = numerical_rank(states);

  const FockBasis& basis = decomposition->basis();
  double photons = 0.0;
  for (int x = 0; x < kSymbols; ++x) {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Occupation& n = basis.state(k);
      photons += std::norm(states(static_cast<Eigen::Index>(k), x)) * (n[0] + n[1]);
    }
  }
  v.mean_alice_photons = photons / kSymbols;
  v.pass = v.max_off_diagonal < tolerance && std::abs(v.entropy_bits - 3.0) < 1e-9;
  return v;
}

Codebook to_codebook(const Params& params) {
  auto basis = enumerate_basis(kPhotons, kModes);
  StateVector psi1 = build_initial_state(params, basis);
  psi1.amplitudes /= psi1.amplitudes.norm();
  Codebook cb;
  cb.psi1 = std::move(psi1);
  for (int x = 1; x <= kSymbols; ++x) cb.unitaries.push_back(symbol_mode_matrix(x, params));
  cb.probabilities.assign(kSymbols, 1.0 / kSymbols);
  return cb;
}

std::string format_report(const Verification& v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(12);
  // Values that round to zero print without a sign.
  const auto shown = [](double x) { return std::abs(x) < 5e-13 ? 0.0 : x; };
  out << "constraint residuals\n";
  for (int k = 0; k < Residuals::kCount; ++k) {
    out << "  " << std::left << std::setw(24) << Residuals::names()[static_cast<std::size_t>(k)] << std::right
        << std::setw(20) << shown(v.residuals.values[static_cast<std::size_t>(k)]) << '\n';
  }
  out << "gram matrix |<psi_i|psi_j>|\n";
  for (Eigen::Index i = 0; i < v.gram.rows(); ++i) {
    out << ' ';
    for (Eigen::Index j = 0; j < v.gram.cols(); ++j) out << ' ' << std::abs(v.gram(i, j));
    out << '\n';
  }
  out << "max off-diagonal     " << v.max_off_diagonal << '\n';
  out << "tolerance            " << v.tolerance << '\n';
  out << "entropy bits         " << v.entropy_bits << '\n';
  out << "span rank            " << v.span_rank << '\n';
  out << "mean Alice photons   " << v.mean_alice_photons << '\n';
  out << "result               " << (v.pass ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::string params_to_json(const Params& params) {
  nlohmann::json j;
  j["c"] = params.c;
  j["d"] = params.d;
  j["q3"] = params.q3;
  return j.dump(2);
}

Params params_from_json(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    Params p;
    const auto c = j.at("c").get<std::vector<double>>();
    const auto d = j.at("d").get<std::vector<double>>();
    if (c.size() != 10 || d.size() != 10) {
      throw Error(ErrorCode::Parse, "protocol parameters need exactly 10 amplitudes and 10 phases");
    }
    std::copy(c.begin(), c.end(), p.c.begin());
    std::copy(d.begin(), d.end(), p.d.begin());
    p.q3 = j.value("q3", 0.0);
    for (double ck : p.c) {
      if (!(ck >= 0.0)) throw Error(ErrorCode::Parse, "protocol amplitudes must be non-negative");
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("protocol parameters: ") + e.what());
  }
}

}  // namespace lincap::protocol
