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

#include "lincap/entropyopt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "lincap/capacity.hpp"
#include "lincap/error.hpp"
#include "lincap/minimize.hpp"

namespace lincap {

namespace {

// Eigenvalues at or below this are treated as exact zeros of rho.
constexpr double kEigenFloor = 1e-14;

const double kInvLn2 = 1.0 / std::numbers::ln2;

// a_i^dag a_j maps Alice basis state `from` to `to` with amplitude `coef`.
struct OneBodyTerm {
  int i = 0;
  int j = 0;
  Eigen::Index from = 0;
  Eigen::Index to = 0;
  double coef = 0.0;
};

struct SectorData {
  const Sector* sector = nullptr;
  LiftPlan plan;
  std::vector<OneBodyTerm> one_body;
};

std::vector<OneBodyTerm> one_body_terms(const FockBasis& alice) {
  std::vector<OneBodyTerm> terms;
  const int modes = alice.modes();
  for (std::size_t a = 0; a < alice.size(); ++a) {
    const Occupation& n = alice.state(a);
    for (int j = 0; j < modes; ++j) {
      const int nj = n[static_cast<std::size_t>(j)];
      if (nj == 0) continue;
      for (int i = 0; i < modes; ++i) {
        Occupation m = n;
        --m[static_cast<std::size_t>(j)];
        const int ni_before = m[static_cast<std::size_t>(i)];
        ++m[static_cast<std::size_t>(i)];
        terms.push_back({i, j, static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(alice.index_of(m)),
                         std::sqrt(static_cast<double>(nj) * (ni_before + 1))});
      }
    }
  }
  return terms;
}

// e^{i(a+b)/2} sinc((a-b)/2): divided difference of e^{i theta} at a, b.
Complex exp_divided_difference(double a, double b) {
  const double half = 0.5 * (a - b);
  const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
  return std::polar(sinc, 0.5 * (a + b));
}

RVector softmax(const double* logits, int n) {
  RVector p(n);
  double top = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) top = std::max(top, logits[i]);
  for (int i = 0; i < n; ++i) p(i) = std::exp(logits[i] - top);
  return p / p.sum();
}

}  // namespace

CMatrix generator_from_parameters(const double* params, int modes) {
  CMatrix h(modes, modes);
  for (int k = 0; k < modes; ++k) {
    h(k, k) = Complex(0.0, params[k * modes + k]);
    for (int l = k + 1; l < modes; ++l) {
      const double re = params[k * modes + l];
      const double im = params[l * modes + k];
      h(k, l) = Complex(re, im);
      h(l, k) = Complex(-re, im);
    }
  }
  return h;
}

void parameters_from_generator(const CMatrix& generator, double* params) {
  const auto modes = static_cast<int>(generator.rows());
  for (int k = 0; k < modes; ++k) {
    params[k * modes + k] = generator(k, k).imag();
    for (int l = k + 1; l < modes; ++l) {
      params[k * modes + l] = 0.5 * (generator(k, l).real() - generator(l, k).real());
      params[l * modes + k] = 0.5 * (generator(k, l).imag() + generator(l, k).imag());
    }
  }
}

void validate_codebook(const Codebook& codebook, const SectorDecomposition& decomposition) {
  if (!codebook.psi1.basis || !codebook.psi1.basis->same_space(decomposition.basis()) ||
      codebook.psi1.amplitudes.size() != static_cast<Eigen::Index>(decomposition.basis().size())) {
    throw Error(ErrorCode::BasisMismatch, "codebook initial state does not match the basis");
  }
  if (codebook.unitaries.empty()) throw Error(ErrorCode::InvalidArgument, "codebook has no symbols");
  if (codebook.probabilities.size() != codebook.unitaries.size()) {
    throw Error(ErrorCode::InvalidArgument, "one probability per symbol is required");
  }
  double total = 0.0;
  for (double p : codebook.probabilities) {
    if (!(p >= 0.0)) throw Error(ErrorCode::InvalidArgument, "probabilities must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error(ErrorCode::InvalidArgument, "probabilities must sum to 1");
  for (const ModeUnitary& u : codebook.unitaries) {
    if (u.dimension() != decomposition.alice_modes()) {
      throw Error(ErrorCode::ModeCountMismatch, "codebook unitary does not act on Alice's modes");
    }
  }
  const CMatrix& first = codebook.unitaries.front().matrix();
  if ((first - CMatrix::Identity(first.rows(), first.cols())).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(ErrorCode::InvalidArgument, "the first codebook unitary must be the identity");
  }
}

CMatrix codebook_states(const Codebook& codebook, std::shared_ptr<const SectorDecomposition> decomposition) {
  validate_codebook(codebook, *decomposition);
  const auto dim = codebook.psi1.amplitudes.size();
  CMatrix states(dim, static_cast<Eigen::Index>(codebook.num_symbols()));
  for (std::size_t x = 0; x < codebook.num_symbols(); ++x) {
    const FockOperator op = lift_alice_unitary(codebook.unitaries[x], decomposition);
    CVector out;
    op.apply_to(codebook.psi1.amplitudes, out);
    states.col(static_cast<Eigen::Index>(x)) = out;
  }
  return states;
}

CMatrix density_matrix(const Codebook& codebook, std::shared_ptr<const SectorDecomposition> decomposition) {
  const CMatrix states = codebook_states(codebook, decomposition);
  CMatrix rho = CMatrix::Zero(states.rows(), states.rows());
  for (Eigen::Index x = 0; x < states.cols(); ++x) {
    rho.noalias() += codebook.probabilities[static_cast<std::size_t>(x)] * states.col(x) * states.col(x).adjoint();
  }
  return rho;
}

CMatrix gram_matrix(const Codebook& codebook, std::shared_ptr<const SectorDecomposition> decomposition) {
  const CMatrix states = codebook_states(codebook, decomposition);
  return states.adjoint() * states;
}

double entropy_from_eigenvalues(const RVector& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
    const double l = std::clamp(eigenvalues(k), 0.0, 1.0);
    if (l > 0.0) s -= l * std::log2(l);
  }
  return s;
}

double von_neumann_entropy(const CMatrix& rho) {
  const double trace = rho.trace().real();
  if (std::abs(trace - 1.0) > 1e-8) {
    throw Error(ErrorCode::TraceViolation, "density matrix trace is " + std::to_string(trace));
  }
  return entropy_from_eigenvalues(eigh(rho).eigenvalues);
}

RVector entropy_probability_gradient(const Codebook& codebook,
                                     std::shared_ptr<const SectorDecomposition> decomposition) {
  const CMatrix states = codebook_states(codebook, decomposition);
  CMatrix rho = CMatrix::Zero(states.rows(), states.rows());
  for (Eigen::Index x = 0; x < states.cols(); ++x) {
    rho.noalias() += codebook.probabilities[static_cast<std::size_t>(x)] * states.col(x) * states.col(x).adjoint();
  }
  const HermitianSpectrum eig = eigh(rho);
  RVector w(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    const double l = eig.eigenvalues(k);
    w(k) = l > kEigenFloor ? -(std::log2(l) + kInvLn2) : 0.0;
  }
  const CMatrix weight = eig.eigenvectors * w.asDiagonal() * eig.eigenvectors.adjoint();
  RVector grad(states.cols());
  for (Eigen::Index x = 0; x < states.cols(); ++x) {
    grad(x) = (states.col(x).adjoint() * weight * states.col(x))(0, 0).real();
  }
  return grad;
}

// ---------------------------------------------------------------------------

struct EntropyObjective::Impl {
  std::shared_ptr<const SectorDecomposition> decomposition;
  int symbols = 0;
  bool free_probabilities = false;
  int alice_modes = 0;
  Eigen::Index dim = 0;
  std::size_t num_parameters = 0;
  std::vector<SectorData> sectors;

  std::size_t generator_offset(int symbol) const {
    return static_cast<std::size_t>(2 * dim) +
           static_cast<std::size_t>(symbol - 1) * static_cast<std::size_t>(alice_modes * alice_modes);
  }
  std::size_t logit_offset() const { return generator_offset(symbols); }

  std::vector<CMatrix> to_sectors(const CVector& v) const {
    std::vector<CMatrix> out;
    out.reserve(sectors.size());
    for (const SectorData& sd : sectors) {
      const Sector& s = *sd.sector;
      CMatrix m(static_cast<Eigen::Index>(s.alice_dim()), static_cast<Eigen::Index>(s.bob_dim()));
      for (std::size_t a = 0; a < s.alice_dim(); ++a) {
        for (std::size_t b = 0; b < s.bob_dim(); ++b) {
          m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
              v(static_cast<Eigen::Index>(s.full_index(a, b)));
        }
      }
      out.push_back(std::move(m));
    }
    return out;
  }

  void from_sectors(const std::vector<CMatrix>& parts, Eigen::Ref<CVector> v) const {
    for (std::size_t k = 0; k < sectors.size(); ++k) {
      const Sector& s = *sectors[k].sector;
      for (std::size_t a = 0; a < s.alice_dim(); ++a) {
        for (std::size_t b = 0; b < s.bob_dim(); ++b) {
          v(static_cast<Eigen::Index>(s.full_index(a, b))) =
              parts[k](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        }
      }
    }
  }

  double evaluate(const RVector& params, RVector* gradient) const;
};

double EntropyObjective::Impl::evaluate(const RVector& params, RVector* gradient) const {
  if (static_cast<std::size_t>(params.size()) != num_parameters) {
    throw Error(ErrorCode::InvalidArgument, "parameter vector has the wrong length");
  }
  const int m = alice_modes;
  CVector z(dim);
  for (Eigen::Index i = 0; i < dim; ++i) z(i) = Complex(params(i), params(dim + i));
  const double znorm = z.norm();
  const CVector psi1 = z / znorm;
  const std::vector<CMatrix> psi1_s = to_sectors(psi1);

  struct SymbolData {
    CMatrix q;        // eigenvectors of the generator
    RVector theta;    // eigenphases, U = q diag(e^{i theta}) q^dag
    std::vector<CMatrix> blocks;
  };
  std::vector<SymbolData> sym(static_cast<std::size_t>(symbols));

  RVector p = free_probabilities ? softmax(params.data() + logit_offset(), symbols)
                                 : RVector::Constant(symbols, 1.0 / symbols);

  CMatrix phi(dim, symbols);
  phi.col(0) = std::sqrt(p(0)) * psi1;
  for (int x = 1; x < symbols; ++x) {
    SymbolData& d = sym[static_cast<std::size_t>(x)];
    const CMatrix h = generator_from_parameters(params.data() + generator_offset(x), m);
    const HermitianSpectrum eig = eigh(Complex(0.0, 1.0) * h);
    d.q = eig.eigenvectors;
    d.theta = -eig.eigenvalues;
    CVector phases(m);
    for (int k = 0; k < m; ++k) phases(k) = std::polar(1.0, d.theta(k));
    const CMatrix u = d.q * phases.asDiagonal() * d.q.adjoint();
    d.blocks.resize(sectors.size());
    std::vector<CMatrix> out_s(sectors.size());
    for (std::size_t s = 0; s < sectors.size(); ++s) {
      sectors[s].plan.lift_into(u, d.blocks[s]);
      out_s[s] = d.blocks[s] * psi1_s[s];
    }
    CVector col(dim);
    from_sectors(out_s, col);
    phi.col(x) = std::sqrt(p(x)) * col;
  }

  // Spectrum of rho = phi phi^dag, through whichever Gram form is smaller.
  double entropy = 0.0;
  CMatrix w_phi;  // W phi with W = -(log2 rho + 1/ln2) on rho's support
  const bool small_side = symbols <= dim;
  const HermitianSpectrum eig = small_side ? eigh(phi.adjoint() * phi) : eigh(phi * phi.adjoint());
  RVector w(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    const double l = eig.eigenvalues(k);
    if (l > kEigenFloor) {
      entropy -= l * std::log2(l);
      w(k) = -(std::log2(l) + kInvLn2);
    } else {
      w(k) = 0.0;
    }
  }
  if (!gradient) return entropy;

  const CMatrix weight = eig.eigenvectors * w.asDiagonal() * eig.eigenvectors.adjoint();
  w_phi = small_side ? CMatrix(phi * weight) : CMatrix(weight * phi);

  gradient->setZero(static_cast<Eigen::Index>(num_parameters));
  std::vector<CMatrix> g_psi(sectors.size());
  for (std::size_t s = 0; s < sectors.size(); ++s) g_psi[s] = CMatrix::Zero(psi1_s[s].rows(), psi1_s[s].cols());
  RVector dp(symbols);

  for (int x = 0; x < symbols; ++x) {
    const double sp = std::sqrt(p(x));
    const CVector y = w_phi.col(x);
    if (free_probabilities) dp(x) = (phi.col(x).dot(y)).real() / p(x);
    std::vector<CMatrix> chi = to_sectors(y);
    if (x == 0) {
      for (std::size_t s = 0; s < sectors.size(); ++s) g_psi[s] += (2.0 * sp) * chi[s];
      continue;
    }
    const SymbolData& d = sym[static_cast<std::size_t>(x)];
    CMatrix t = CMatrix::Zero(m, m);
    for (std::size_t s = 0; s < sectors.size(); ++s) {
      chi[s] = (2.0 * sp) * (d.blocks[s].adjoint() * chi[s]);
      g_psi[s] += chi[s];
      if (sectors[s].one_body.empty()) continue;
      const CMatrix r = chi[s].conjugate() * psi1_s[s].transpose();
      for (const OneBodyTerm& term : sectors[s].one_body) t(term.i, term.j) += term.coef * r(term.to, term.from);
    }
    // dS = Re tr(B T^T) with B = U^dag dU; push through the exponential's derivative.
    CVector back_phase(m);
    for (int k = 0; k < m; ++k) back_phase(k) = std::polar(1.0, -d.theta(k));
    const CMatrix c = d.q.adjoint() * t.transpose() * d.q * back_phase.asDiagonal();
    CMatrix dmat(m, m);
    for (int k = 0; k < m; ++k) {
      for (int l = 0; l < m; ++l) dmat(k, l) = exp_divided_difference(d.theta(k), d.theta(l)) * c(l, k);
    }
    const CMatrix e = d.q * dmat.transpose() * d.q.adjoint();
    double* g = gradient->data() + generator_offset(x);
    for (int k = 0; k < m; ++k) {
      g[k * m + k] = -e(k, k).imag();
      for (int l = k + 1; l < m; ++l) {
        g[k * m + l] = (e(l, k) - e(k, l)).real();
        g[l * m + k] = -(e(l, k) + e(k, l)).imag();
      }
    }
  }

  CVector g_full(dim);
  from_sectors(g_psi, g_full);
  const CVector hvec = g_full - psi1 * psi1.dot(g_full).real();
  for (Eigen::Index i = 0; i < dim; ++i) {
    (*gradient)(i) = hvec(i).real() / znorm;
    (*gradient)(dim + i) = hvec(i).imag() / znorm;
  }
  if (free_probabilities) {
    const double mean = p.dot(dp);
    for (int x = 0; x < symbols; ++x) {
      (*gradient)(static_cast<Eigen::Index>(logit_offset()) + x) = p(x) * (dp(x) - mean);
    }
  }
  return entropy;
}

EntropyObjective::EntropyObjective(std::shared_ptr<const SectorDecomposition> decomposition, int num_symbols,
                                   bool free_probabilities)
    : impl_(std::make_unique<Impl>()) {
  if (num_symbols < 1) throw Error(ErrorCode::InvalidArgument, "need at least one symbol");
  impl_->decomposition = std::move(decomposition);
  impl_->symbols = num_symbols;
  impl_->free_probabilities = free_probabilities;
  impl_->alice_modes = impl_->decomposition->alice_modes();
  impl_->dim = static_cast<Eigen::Index>(impl_->decomposition->basis().size());
  impl_->num_parameters = impl_->generator_offset(num_symbols) +
                          (free_probabilities ? static_cast<std::size_t>(num_symbols) : 0);
  for (const Sector& s : impl_->decomposition->sectors()) {
    impl_->sectors.push_back(SectorData{&s, LiftPlan(*s.alice_basis), one_body_terms(*s.alice_basis)});
  }
}

EntropyObjective::~EntropyObjective() = default;
EntropyObjective::EntropyObjective(EntropyObjective&&) noexcept = default;
EntropyObjective& EntropyObjective::operator=(EntropyObjective&&) noexcept = default;

std::size_t EntropyObjective::num_parameters() const noexcept { return impl_->num_parameters; }
int EntropyObjective::num_symbols() const noexcept { return impl_->symbols; }
bool EntropyObjective::free_probabilities() const noexcept { return impl_->free_probabilities; }
const std::shared_ptr<const SectorDecomposition>& EntropyObjective::decomposition() const noexcept {
  return impl_->decomposition;
}

double EntropyObjective::value(const RVector& params) const { return impl_->evaluate(params, nullptr); }

double EntropyObjective::value_and_gradient(const RVector& params, RVector& gradient) const {
  return impl_->evaluate(params, &gradient);
}

Codebook EntropyObjective::decode(const RVector& params) const {
  const Impl& im = *impl_;
  Codebook cb;
  CVector z(im.dim);
  for (Eigen::Index i = 0; i < im.dim; ++i) z(i) = Complex(params(i), params(im.dim + i));
  cb.psi1 = StateVector{im.decomposition->basis_ptr(), z / z.norm()};
  cb.unitaries.push_back(ModeUnitary::identity(im.alice_modes));
  for (int x = 1; x < im.symbols; ++x) {
    cb.unitaries.push_back(
        expm_antihermitian(generator_from_parameters(params.data() + im.generator_offset(x), im.alice_modes)));
  }
  if (im.free_probabilities) {
    const RVector p = softmax(params.data() + im.logit_offset(), im.symbols);
    cb.probabilities.assign(p.data(), p.data() + p.size());
  } else {
    cb.probabilities.assign(static_cast<std::size_t>(im.symbols), 1.0 / im.symbols);
  }
  return cb;
}

RVector EntropyObjective::encode(const Codebook& codebook) const {
  const Impl& im = *impl_;
  validate_codebook(codebook, *im.decomposition);
  if (static_cast<int>(codebook.num_symbols()) != im.symbols) {
    throw Error(ErrorCode::InvalidArgument, "codebook size does not match the objective");
  }
  RVector params(static_cast<Eigen::Index>(im.num_parameters));
  for (Eigen::Index i = 0; i < im.dim; ++i) {
    params(i) = codebook.psi1.amplitudes(i).real();
    params(im.dim + i) = codebook.psi1.amplitudes(i).imag();
  }
  for (int x = 1; x < im.symbols; ++x) {
    parameters_from_generator(logm_unitary(codebook.unitaries[static_cast<std::size_t>(x)]),
                              params.data() + im.generator_offset(x));
  }
  if (im.free_probabilities) {
    for (int x = 0; x < im.symbols; ++x) {
      const double px = std::max(codebook.probabilities[static_cast<std::size_t>(x)], 1e-300);
      params(static_cast<Eigen::Index>(im.logit_offset()) + x) = std::log(px);
    }
  }
  return params;
}

RVector EntropyObjective::random_parameters(Rng& rng) const {
  const Impl& im = *impl_;
  RVector params = RVector::Zero(static_cast<Eigen::Index>(im.num_parameters));
  for (Eigen::Index i = 0; i < 2 * im.dim; ++i) params(i) = rng.normal();
  const double scale = 1.0 / params.head(2 * im.dim).norm();
  params.head(2 * im.dim) *= scale;
  for (int x = 1; x < im.symbols; ++x) {
    parameters_from_generator(logm_unitary(haar_unitary(im.alice_modes, rng)), params.data() + im.generator_offset(x));
  }
  return params;
}

// ---------------------------------------------------------------------------

const char* to_string(OptimizerKind kind) noexcept {
  return kind == OptimizerKind::Lbfgs ? "lbfgs" : "momentum";
}

const char* to_string(ProbabilityMode mode) noexcept {
  return mode == ProbabilityMode::Uniform ? "uniform" : "simplex";
}

namespace {

// Resizes a warm-start codebook to `symbols` entries; new symbols get Haar unitaries.
Codebook fit_warm_start(const Codebook& warm, int symbols, int alice_modes, std::uint64_t seed) {
  Codebook cb;
  cb.psi1 = warm.psi1;
  Rng rng(seed);
  for (int x = 0; x < symbols; ++x) {
    if (static_cast<std::size_t>(x) < warm.unitaries.size()) {
      cb.unitaries.push_back(warm.unitaries[static_cast<std::size_t>(x)]);
    } else {
      cb.unitaries.push_back(haar_unitary(alice_modes, rng));
    }
  }
  cb.probabilities.assign(static_cast<std::size_t>(symbols), 1.0 / symbols);
  return cb;
}

struct RestartOutcome {
  bool ran = false;
  double entropy = -1.0;
  bool converged = false;
  RVector params;
  std::vector<double> trajectory;
};

}  // namespace

OptResult maximize_entropy(int photons, int modes, int alice_modes, int num_symbols, const OptConfig& config,
                           const Codebook* warm_start) {
  if (num_symbols < 2) throw Error(ErrorCode::InvalidArgument, "need at least two symbols");
  if (config.restarts < 1) throw Error(ErrorCode::InvalidArgument, "need at least one restart");
  auto decomposition = sector_split(enumerate_basis(photons, modes), alice_modes);
  const double bound = std::min(std::log2(static_cast<double>(num_symbols)),
                                capacity_bits(photons, modes, alice_modes));
  const EntropyObjective objective(decomposition, num_symbols,
                                   config.probabilities == ProbabilityMode::Simplex);

  RVector warm_params;
  if (warm_start) {
    validate_codebook(*warm_start, *decomposition);
    warm_params = objective.encode(
        fit_warm_start(*warm_start, num_symbols, alice_modes, derive_seed(config.seed, 0xfeedULL)));
  }

  MinimizeOptions mo;
  mo.max_iterations = config.max_iterations;
  mo.gradient_tolerance = config.gradient_tolerance;
  mo.target = -(bound - 1e-13);

  const auto restarts = static_cast<std::size_t>(config.restarts);
  std::vector<RestartOutcome> outcomes(restarts);
  std::atomic<std::size_t> stop_index{restarts};

  parallel_for(restarts, config.threads, [&](std::size_t r) {
    if (r > stop_index.load()) return;
    Rng rng(derive_seed(config.seed, r));
    RVector x0 = (r == 0 && warm_start) ? warm_params : objective.random_parameters(rng);
    const GradientFunction f = [&](const RVector& x, RVector& g) {
      const double s = objective.value_and_gradient(x, g);
      g = -g;
      return -s;
    };
    const MinimizeResult mr = config.optimizer == OptimizerKind::Lbfgs ? minimize_lbfgs(f, std::move(x0), mo)
                                                                       : minimize_momentum(f, std::move(x0), mo);
    RestartOutcome& out = outcomes[r];
    out.ran = true;
    out.entropy = -mr.value;
    out.params = mr.x;
    out.trajectory.reserve(mr.trajectory.size());
    for (double v : mr.trajectory) out.trajectory.push_back(-v);
    const bool at_bound = out.entropy >= bound - config.bound_margin;
    out.converged = mr.converged || at_bound;
    if (config.stop_at_bound && at_bound) {
      std::size_t cur = stop_index.load();
      while (r < cur && !stop_index.compare_exchange_weak(cur, r)) {
      }
    }
  });

  const std::size_t last = std::min(stop_index.load(), restarts - 1);
  std::size_t best = 0;
  for (std::size_t r = 1; r <= last; ++r) {
    if (outcomes[r].ran && outcomes[r].entropy > outcomes[best].entropy) best = r;
  }

  OptResult result;
  const RestartOutcome& win = outcomes[best];
  result.codebook = objective.decode(win.params);
  result.s_max = objective.value(win.params);
  result.gram = gram_matrix(result.codebook, decomposition);
  result.restarts_used = static_cast<int>(last + 1);
  result.converged = win.converged;
  result.trajectory = win.trajectory;
  result.best_restart = static_cast<int>(best);
  return result;
}

std::vector<SweepPoint> symbol_sweep(int photons, int modes, int alice_modes, int x_min, int x_max,
                                     const OptConfig& config, const SweepOptions& options) {
  if (x_min < 2 || x_max < x_min) throw Error(ErrorCode::InvalidArgument, "symbol range must satisfy 2 <= min <= max");
  const double capacity = capacity_bits(photons, modes, alice_modes);
  const std::uint64_t bound = span_bound(photons, modes, alice_modes);
  if (static_cast<std::uint64_t>(x_max) > 4 * bound) {
    throw Error(ErrorCode::InvalidArgument, "symbol range exceeds four times the span bound");
  }
  std::vector<SweepPoint> points;
  std::optional<Codebook> previous;
  for (int x = x_min; x <= x_max; ++x) {
    OptConfig cfg = config;
    cfg.seed = derive_seed(config.seed, static_cast<std::uint64_t>(x));
    const OptResult r = maximize_entropy(photons, modes, alice_modes, x, cfg,
                                         options.warm_start && previous ? &*previous : nullptr);
    SweepPoint pt;
    pt.num_symbols = x;
    pt.s_max = r.s_max;
    pt.log2_symbols = std::log2(static_cast<double>(x));
    pt.capacity_bits = capacity;
    pt.converged = r.converged;
    pt.restarts_used = r.restarts_used;
    points.push_back(pt);
    previous = r.codebook;
  }
  return points;
}

std::string symbol_sweep_csv(const std::vector<SweepPoint>& points) {
  std::ostringstream out;
  out << "X,S_max_bits,log2X,capacity_bits,converged,restarts_used\n";
  out << std::setprecision(12);
  for (const SweepPoint& p : points) {
    out << p.num_symbols << ',' << p.s_max << ',' << p.log2_symbols << ',' << p.capacity_bits << ','
        << (p.converged ? "true" : "false") << ',' << p.restarts_used << '\n';
  }
  return out.str();
}

}  // namespace lincap
