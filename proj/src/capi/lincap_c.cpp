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

#include "lincap/lincap.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "lincap/capacity.hpp"
#include "lincap/codebook_io.hpp"
#include "lincap/entropyopt.hpp"
#include "lincap/error.hpp"
#include "lincap/fock.hpp"
#include "lincap/protocol.hpp"
#include "lincap/spanrank.hpp"

struct lincap_capacity_report {
  lincap::CapacityReport report;
};

struct lincap_codebook {
  lincap::CodebookFile file;
};

struct lincap_opt_result {
  int photons = 0;
  int modes = 0;
  int alice_modes = 0;
  lincap::OptConfig config;
  lincap::OptResult result;
};

struct lincap_protocol_params {
  lincap::protocol::Params params;
};

struct lincap_protocol_report {
  lincap::protocol::Verification verification;
};

namespace {

thread_local std::string g_last_error;

lincap_status status_for(lincap::ErrorCode code) {
  using lincap::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return LINCAP_INVALID_ARGUMENT;
    case ErrorCode::Overflow: return LINCAP_OVERFLOW;
    case ErrorCode::DimensionCap: return LINCAP_DIMENSION_CAP;
    case ErrorCode::InvalidModeSplit: return LINCAP_INVALID_MODE_SPLIT;
    case ErrorCode::ModeCountMismatch: return LINCAP_MODE_COUNT_MISMATCH;
    case ErrorCode::BasisMismatch: return LINCAP_BASIS_MISMATCH;
    case ErrorCode::SizeCap: return LINCAP_SIZE_CAP;
    case ErrorCode::NonConvergence: return LINCAP_NON_CONVERGENCE;
    case ErrorCode::TraceViolation: return LINCAP_TRACE_VIOLATION;
    case ErrorCode::Inconclusive: return LINCAP_INCONCLUSIVE;
    case ErrorCode::IndexOutOfRange: return LINCAP_INDEX_OUT_OF_RANGE;
    case ErrorCode::SolverFailure: return LINCAP_SOLVER_FAILURE;
    case ErrorCode::Parse: return LINCAP_PARSE;
    case ErrorCode::Io: return LINCAP_IO;
  }
  return LINCAP_INTERNAL;
}

template <typename F>
lincap_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return LINCAP_OK;
  } catch (const lincap::Error& e) {
    g_last_error = e.what();
    return status_for(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LINCAP_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LINCAP_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return LINCAP_INTERNAL;
  }
}

lincap_status null_argument(const char* name) {
  g_last_error = std::string(name) + " must not be NULL";
  return LINCAP_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lincap::SpanOptions to_span_options(const lincap_span_options* o) {
  lincap::SpanOptions opts;
  if (!o) return opts;
  opts.num_samples = o->num_samples;
  opts.seed = o->seed;
  opts.threads = o->threads;
  opts.rank_tolerance = o->rank_tolerance;
  opts.strict = o->strict != 0;
  return opts;
}

lincap::OptConfig to_opt_config(const lincap_opt_config* c) {
  lincap::OptConfig cfg;
  if (!c) return cfg;
  cfg.restarts = c->restarts;
  cfg.max_iterations = c->max_iterations;
  cfg.gradient_tolerance = c->gradient_tolerance;
  cfg.optimizer = c->optimizer == LINCAP_OPTIMIZER_MOMENTUM ? lincap::OptimizerKind::Momentum
                                                            : lincap::OptimizerKind::Lbfgs;
  cfg.probabilities = c->probabilities == LINCAP_PROBABILITIES_SIMPLEX ? lincap::ProbabilityMode::Simplex
                                                                       : lincap::ProbabilityMode::Uniform;
  cfg.seed = c->seed;
  cfg.threads = c->threads;
  cfg.stop_at_bound = c->stop_at_bound != 0;
  return cfg;
}

std::map<std::string, std::string> parse_metadata(const char* metadata_json) {
  std::map<std::string, std::string> out;
  if (!metadata_json || !*metadata_json) return out;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(metadata_json);
  } catch (const nlohmann::json::exception& e) {
    throw lincap::Error(lincap::ErrorCode::Parse, std::string("metadata: ") + e.what());
  }
  if (!j.is_object()) throw lincap::Error(lincap::ErrorCode::Parse, "metadata must be a JSON object");
  for (const auto& [key, value] : j.items()) out[key] = value.is_string() ? value.get<std::string>() : value.dump();
  return out;
}

lincap_regime to_c(lincap::Regime r) {
  switch (r) {
    case lincap::Regime::AliceDominant: return LINCAP_ALICE_DOMINANT;
    case lincap::Regime::Balanced: return LINCAP_BALANCED;
    case lincap::Regime::BobDominant: return LINCAP_BOB_DOMINANT;
    case lincap::Regime::BobSaturated: return LINCAP_BOB_SATURATED;
  }
  return LINCAP_BALANCED;
}

lincap::Regime from_c(lincap_regime r) {
  switch (r) {
    case LINCAP_ALICE_DOMINANT: return lincap::Regime::AliceDominant;
    case LINCAP_BALANCED: return lincap::Regime::Balanced;
    case LINCAP_BOB_DOMINANT: return lincap::Regime::BobDominant;
    case LINCAP_BOB_SATURATED: return lincap::Regime::BobSaturated;
  }
  return lincap::Regime::Balanced;
}

}  // namespace

extern "C" {

const char* lincap_status_string(lincap_status status) {
  switch (status) {
    case LINCAP_OK: return "ok";
    case LINCAP_INVALID_ARGUMENT: return "invalid-argument";
    case LINCAP_INVALID_MODE_SPLIT: return "invalid-mode-split";
    case LINCAP_OVERFLOW: return "overflow";
    case LINCAP_DIMENSION_CAP: return "dimension-cap";
    case LINCAP_SIZE_CAP: return "size-cap";
    case LINCAP_MODE_COUNT_MISMATCH: return "mode-count-mismatch";
    case LINCAP_BASIS_MISMATCH: return "basis-mismatch";
    case LINCAP_INDEX_OUT_OF_RANGE: return "index-out-of-range";
    case LINCAP_NON_CONVERGENCE: return "non-convergence";
    case LINCAP_TRACE_VIOLATION: return "trace-violation";
    case LINCAP_INCONCLUSIVE: return "inconclusive-gap";
    case LINCAP_SOLVER_FAILURE: return "solver-failure";
    case LINCAP_PARSE: return "parse-error";
    case LINCAP_IO: return "io-error";
    case LINCAP_INTERNAL: return "internal-error";
  }
  return "unknown-status";
}

const char* lincap_last_error(void) { return g_last_error.c_str(); }

const char* lincap_version(void) { return LINCAP_VERSION; }

void lincap_string_free(char* s) { delete[] s; }

lincap_status lincap_dim_fock(int photons, int modes, uint64_t* out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = lincap::dim_fock(photons, modes); });
}

lincap_status lincap_log2_dim_fock(int photons, int modes, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = lincap::log2_dim_fock(photons, modes); });
}

// ---- capacity ---------------------------------------------------------------

lincap_status lincap_capacity_compute(int photons, int modes, int alice_modes, lincap_capacity_report** out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new lincap_capacity_report{lincap::capacity_report(photons, modes, alice_modes)};
  });
}

void lincap_capacity_free(lincap_capacity_report* report) { delete report; }

double lincap_capacity_bits(const lincap_capacity_report* r) { return r ? r->report.capacity_bits : NAN; }

double lincap_capacity_log2_span_bound(const lincap_capacity_report* r) {
  return r ? r->report.log2_span_bound : NAN;
}

double lincap_capacity_log2_hilbert_dim(const lincap_capacity_report* r) {
  return r ? r->report.log2_hilbert_dim : NAN;
}

int lincap_capacity_span_bound(const lincap_capacity_report* r, uint64_t* out) {
  if (!r || !out || !r->report.span_bound) return 0;
  *out = *r->report.span_bound;
  return 1;
}

int lincap_capacity_hilbert_dim(const lincap_capacity_report* r, uint64_t* out) {
  if (!r || !out || !r->report.hilbert_dim) return 0;
  *out = *r->report.hilbert_dim;
  return 1;
}

size_t lincap_capacity_num_sectors(const lincap_capacity_report* r) { return r ? r->report.terms.size() : 0; }

lincap_status lincap_capacity_sector_term(const lincap_capacity_report* r, size_t index, int* alice_photons,
                                          double* log2_value) {
  if (!r) return null_argument("report");
  if (index >= r->report.terms.size()) {
    g_last_error = "sector index out of range";
    return LINCAP_INDEX_OUT_OF_RANGE;
  }
  const lincap::SectorTerm& t = r->report.terms[index];
  if (alice_photons) *alice_photons = t.alice_photons;
  if (log2_value) *log2_value = t.log2_value;
  return LINCAP_OK;
}

lincap_regime lincap_capacity_regime(const lincap_capacity_report* r) {
  return r ? to_c(r->report.regime) : LINCAP_BALANCED;
}

const char* lincap_regime_name(lincap_regime regime) { return lincap::to_string(from_c(regime)); }

double lincap_capacity_peak(const lincap_capacity_report* r) { return r ? r->report.peak : NAN; }

double lincap_capacity_crossover(const lincap_capacity_report* r) { return r ? r->report.crossover : NAN; }

lincap_status lincap_capacity_to_json(const lincap_capacity_report* r, char** out) {
  if (!r) return null_argument("report");
  if (!out) return null_argument("out");
  return guarded([&] {
    const lincap::CapacityReport& c = r->report;
    nlohmann::json j;
    j["photons"] = c.photons;
    j["modes"] = c.modes;
    j["alice_modes"] = c.alice_modes;
    j["bob_modes"] = c.bob_modes;
    j["hilbert_dim"] = c.hilbert_dim ? nlohmann::json(*c.hilbert_dim) : nlohmann::json(nullptr);
    j["log2_hilbert_dim"] = c.log2_hilbert_dim;
    j["span_bound"] = c.span_bound ? nlohmann::json(*c.span_bound) : nlohmann::json(nullptr);
    j["log2_span_bound"] = c.log2_span_bound;
    j["capacity_bits"] = c.capacity_bits;
    nlohmann::json terms = nlohmann::json::array();
    for (const lincap::SectorTerm& t : c.terms) {
      terms.push_back({{"alice_photons", t.alice_photons},
                       {"value", t.exact ? nlohmann::json(*t.exact) : nlohmann::json(nullptr)},
                       {"log2_value", t.log2_value}});
    }
    j["sector_terms"] = std::move(terms);
    j["regime"] = lincap::to_string(c.regime);
    j["peak_alice_photons"] = c.peak;
    j["crossover_alice_photons"] = c.crossover;
    *out = copy_string(j.dump(2));
  });
}

lincap_status lincap_asymptotic_csv(const int* photon_counts, size_t num_photon_counts, const double* ratios,
                                    size_t num_ratios, char** out) {
  if (!out) return null_argument("out");
  if ((!photon_counts && num_photon_counts) || (!ratios && num_ratios)) return null_argument("list");
  return guarded([&] {
    const auto rows = lincap::asymptotic_table(std::span<const int>(photon_counts, num_photon_counts),
                                               std::span<const double>(ratios, num_ratios));
    *out = copy_string(lincap::asymptotic_csv(rows));
  });
}

// ---- span rank ------------------------------------------------------------

void lincap_span_options_default(lincap_span_options* o) {
  if (!o) return;
  const lincap::SpanOptions d;
  o->num_samples = d.num_samples;
  o->seed = d.seed;
  o->threads = d.threads;
  o->rank_tolerance = d.rank_tolerance;
  o->strict = d.strict ? 1 : 0;
}

lincap_status lincap_span_estimate(int photons, int modes, int alice_modes, const lincap_span_options* options,
                                   lincap_span_result* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    const lincap::SpanEstimate e = lincap::estimate_span(photons, modes, alice_modes, to_span_options(options));
    out->rank = e.rank;
    out->num_samples = e.num_samples;
    out->singular_gap = e.singular_gap;
    out->bound = e.bound;
    out->matches_bound = static_cast<std::uint64_t>(e.rank) == e.bound ? 1 : 0;
    out->confident = e.confident() ? 1 : 0;
  });
}

lincap_status lincap_span_sweep_csv(int max_photons, int max_modes, const lincap_span_options* options, char** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    if (max_photons < 1 || max_modes < 2) {
      throw lincap::Error(lincap::ErrorCode::InvalidArgument, "sweep needs max photons >= 1 and max modes >= 2");
    }
    const lincap::SpanOptions opts = to_span_options(options);
    std::vector<lincap::SpanSweepRow> rows;
    for (int n = 1; n <= max_photons; ++n) {
      for (int m = 2; m <= max_modes; ++m) {
        auto part = lincap::span_sweep(n, m, opts);
        rows.insert(rows.end(), part.begin(), part.end());
      }
    }
    *out = copy_string(lincap::span_sweep_csv(rows));
  });
}

// ---- optimization -----------------------------------------------------------

void lincap_opt_config_default(lincap_opt_config* c) {
  if (!c) return;
  const lincap::OptConfig d;
  c->restarts = d.restarts;
  c->max_iterations = d.max_iterations;
  c->gradient_tolerance = d.gradient_tolerance;
  c->optimizer = LINCAP_OPTIMIZER_LBFGS;
  c->probabilities = LINCAP_PROBABILITIES_UNIFORM;
  c->seed = d.seed;
  c->threads = d.threads;
  c->stop_at_bound = d.stop_at_bound ? 1 : 0;
}

lincap_status lincap_optimize(int photons, int modes, int alice_modes, int num_symbols,
                              const lincap_opt_config* config, const lincap_codebook* warm_start,
                              lincap_opt_result** out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto res = std::make_unique<lincap_opt_result>();
    res->photons = photons;
    res->modes = modes;
    res->alice_modes = alice_modes;
    res->config = to_opt_config(config);
    const lincap::Codebook* warm = nullptr;
    if (warm_start) {
      const auto& basis = *warm_start->file.codebook.psi1.basis;
      if (basis.photons() != photons || basis.modes() != modes || warm_start->file.alice_modes != alice_modes) {
        throw lincap::Error(lincap::ErrorCode::BasisMismatch, "warm-start codebook has a different shape");
      }
      warm = &warm_start->file.codebook;
    }
    res->result = lincap::maximize_entropy(photons, modes, alice_modes, num_symbols, res->config, warm);
    *out = res.release();
  });
}

void lincap_opt_result_free(lincap_opt_result* r) { delete r; }

double lincap_opt_result_entropy(const lincap_opt_result* r) { return r ? r->result.s_max : NAN; }

int lincap_opt_result_converged(const lincap_opt_result* r) { return r && r->result.converged ? 1 : 0; }

int lincap_opt_result_restarts_used(const lincap_opt_result* r) { return r ? r->result.restarts_used : 0; }

int lincap_opt_result_best_restart(const lincap_opt_result* r) { return r ? r->result.best_restart : -1; }

double lincap_opt_result_max_gram_off_diagonal(const lincap_opt_result* r) {
  if (!r) return NAN;
  const lincap::CMatrix& g = r->result.gram;
  double m = 0.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      if (i != j) m = std::max(m, std::abs(g(i, j)));
    }
  }
  return m;
}

size_t lincap_opt_result_trajectory(const lincap_opt_result* r, double* values, size_t capacity) {
  if (!r) return 0;
  const auto& t = r->result.trajectory;
  if (values) std::copy_n(t.begin(), std::min(capacity, t.size()), values);
  return t.size();
}

lincap_status lincap_opt_result_codebook_json(const lincap_opt_result* r, const char* metadata_json, char** out) {
  if (!r) return null_argument("result");
  if (!out) return null_argument("out");
  return guarded([&] {
    lincap::CodebookFile file;
    file.codebook = r->result.codebook;
    file.alice_modes = r->alice_modes;
    file.entropy_bits = r->result.s_max;
    file.metadata = parse_metadata(metadata_json);
    *out = copy_string(lincap::codebook_to_json(file));
  });
}

lincap_status lincap_symbol_sweep_csv(int photons, int modes, int alice_modes, int x_min, int x_max,
                                      const lincap_opt_config* config, int warm_start, char** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    lincap::SweepOptions so;
    so.warm_start = warm_start != 0;
    const auto points =
        lincap::symbol_sweep(photons, modes, alice_modes, x_min, x_max, to_opt_config(config), so);
    *out = copy_string(lincap::symbol_sweep_csv(points));
  });
}

lincap_status lincap_codebook_from_json(const char* text, lincap_codebook** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new lincap_codebook{lincap::codebook_from_json(text)}; });
}

void lincap_codebook_free(lincap_codebook* c) { delete c; }

int lincap_codebook_num_symbols(const lincap_codebook* c) {
  return c ? static_cast<int>(c->file.codebook.num_symbols()) : 0;
}

lincap_status lincap_codebook_shape(const lincap_codebook* c, int* photons, int* modes, int* alice_modes) {
  if (!c) return null_argument("codebook");
  const auto& basis = *c->file.codebook.psi1.basis;
  if (photons) *photons = basis.photons();
  if (modes) *modes = basis.modes();
  if (alice_modes) *alice_modes = c->file.alice_modes;
  return LINCAP_OK;
}

lincap_status lincap_codebook_entropy(const lincap_codebook* c, double* out) {
  if (!c) return null_argument("codebook");
  if (!out) return null_argument("out");
  return guarded([&] {
    auto decomposition = lincap::sector_split(c->file.codebook.psi1.basis, c->file.alice_modes);
    *out = lincap::von_neumann_entropy(lincap::density_matrix(c->file.codebook, decomposition));
  });
}

// ---- protocol ------------------------------------------------------------

lincap_status lincap_protocol_default(lincap_protocol_params** out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = new lincap_protocol_params{lincap::protocol::default_params()}; });
}

lincap_status lincap_protocol_solve_random(uint64_t seed, lincap_protocol_params** out) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    lincap::Rng rng(seed);
    *out = new lincap_protocol_params{lincap::protocol::solve_params(rng)};
  });
}

lincap_status lincap_protocol_from_json(const char* text, lincap_protocol_params** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new lincap_protocol_params{lincap::protocol::params_from_json(text)}; });
}

lincap_status lincap_protocol_to_json(const lincap_protocol_params* p, char** out) {
  if (!p) return null_argument("params");
  if (!out) return null_argument("out");
  return guarded([&] { *out = copy_string(lincap::protocol::params_to_json(p->params)); });
}

void lincap_protocol_params_free(lincap_protocol_params* p) { delete p; }

double lincap_protocol_max_residual(const lincap_protocol_params* p) {
  return p ? lincap::protocol::check_constraints(p->params).max_abs() : NAN;
}

lincap_status lincap_protocol_verify(const lincap_protocol_params* p, double tolerance,
                                     lincap_protocol_report** out) {
  if (!p) return null_argument("params");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    if (!(tolerance > 0.0)) throw lincap::Error(lincap::ErrorCode::InvalidArgument, "tolerance must be positive");
    *out = new lincap_protocol_report{lincap::protocol::verify(p->params, tolerance)};
  });
}

void lincap_protocol_report_free(lincap_protocol_report* r) { delete r; }

int lincap_protocol_report_pass(const lincap_protocol_report* r) { return r && r->verification.pass ? 1 : 0; }

double lincap_protocol_report_max_off_diagonal(const lincap_protocol_report* r) {
  return r ? r->verification.max_off_diagonal : NAN;
}

double lincap_protocol_report_entropy(const lincap_protocol_report* r) {
  return r ? r->verification.entropy_bits : NAN;
}

double lincap_protocol_report_mean_alice_photons(const lincap_protocol_report* r) {
  return r ? r->verification.mean_alice_photons : NAN;
}

lincap_status lincap_protocol_report_text(const lincap_protocol_report* r, char** out) {
  if (!r) return null_argument("report");
  if (!out) return null_argument("out");
  return guarded([&] { *out = copy_string(lincap::protocol::format_report(r->verification)); });
}

lincap_status lincap_protocol_codebook_json(const lincap_protocol_params* p, const char* metadata_json, char** out) {
  if (!p) return null_argument("params");
  if (!out) return null_argument("out");
  return guarded([&] {
    lincap::CodebookFile file;
    file.codebook = lincap::protocol::to_codebook(p->params);
    file.alice_modes = lincap::protocol::kAliceModes;
    auto decomposition = lincap::sector_split(file.codebook.psi1.basis, file.alice_modes);
    file.entropy_bits = lincap::von_neumann_entropy(lincap::density_matrix(file.codebook, decomposition));
    file.metadata = parse_metadata(metadata_json);
    *out = copy_string(lincap::codebook_to_json(file));
  });
}

}  // extern "C"
