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

// lincap: command-line front end for the lincap shared library.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "lincap/lincap.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

struct Failure {
  int exit_code;
  std::string message;
};

int exit_code_for(lincap_status s) {
  switch (s) {
    case LINCAP_OK: return kExitOk;
    case LINCAP_INVALID_ARGUMENT:
    case LINCAP_INVALID_MODE_SPLIT:
    case LINCAP_OVERFLOW:
    case LINCAP_DIMENSION_CAP:
    case LINCAP_SIZE_CAP:
    case LINCAP_MODE_COUNT_MISMATCH:
    case LINCAP_BASIS_MISMATCH:
    case LINCAP_INDEX_OUT_OF_RANGE:
    case LINCAP_PARSE: return kExitUsage;
    case LINCAP_INCONCLUSIVE:
    case LINCAP_NON_CONVERGENCE:
    case LINCAP_SOLVER_FAILURE:
    case LINCAP_TRACE_VIOLATION: return kExitInconclusive;
    default: return kExitFailure;
  }
}

void check(lincap_status s) {
  if (s != LINCAP_OK) {
    throw Failure{exit_code_for(s), std::string("error: ") + lincap_status_string(s) + ": " + lincap_last_error()};
  }
}

struct CString {
  char* p = nullptr;
  ~CString() { lincap_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

template <typename T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

Metadata base_metadata(const std::string& command) {
  return {{"command", command}, {"version", lincap_version()}};
}

std::string csv_header(const Metadata& meta) {
  std::ostringstream out;
  for (const auto& [k, v] : meta) out << "# " << k << ": " << v << '\n';
  return out.str();
}

nlohmann::json json_metadata(const Metadata& meta) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : meta) j[k] = v;
  return j;
}

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("LINCAP_OUTPUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  return p;
}

// Writes to the resolved path, or to stdout when path is empty.
void emit(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  const auto p = resolve_output(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(p, std::ios::binary);
  if (!out || !(out << payload)) throw Failure{kExitFailure, "error: cannot write " + p.string()};
  std::cerr << "wrote " << p.string() << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitUsage, "error: cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double parse_ratio(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return std::stod(text);
    return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
  } catch (const std::exception&) {
    throw Failure{kExitUsage, "error: bad ratio '" + text + "'"};
  }
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

struct ShapeArgs {
  int photons = 0;
  int modes = 0;
  int alice_modes = 0;
};

void add_shape(CLI::App* cmd, ShapeArgs& a) {
  cmd->add_option("-N,--photons", a.photons, "Total photon number")->required();
  cmd->add_option("-M,--modes", a.modes, "Total optical modes")->required();
  cmd->add_option("--ma,--alice-modes", a.alice_modes, "Modes held by Alice")->required();
}

std::string shape_string(const ShapeArgs& a) {
  return "N=" + std::to_string(a.photons) + " M=" + std::to_string(a.modes) + " M_A=" + std::to_string(a.alice_modes);
}

struct OptArgs {
  int restarts = 20;
  int max_iterations = 2000;
  double gradient_tolerance = 1e-7;
  std::string optimizer = "lbfgs";
  std::string probabilities = "uniform";
  std::uint64_t seed = 42;
  int threads = 0;
};

void add_opt(CLI::App* cmd, OptArgs& a) {
  cmd->add_option("--restarts", a.restarts, "Random restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", a.max_iterations, "Iterations per restart")->check(CLI::PositiveNumber);
  cmd->add_option("--grad-tol", a.gradient_tolerance, "Gradient-norm stopping tolerance");
  cmd->add_option("--optimizer", a.optimizer, "lbfgs or momentum")->check(CLI::IsMember({"lbfgs", "momentum"}));
  cmd->add_option("--probabilities", a.probabilities, "uniform or simplex")
      ->check(CLI::IsMember({"uniform", "simplex"}));
  cmd->add_option("--seed", a.seed, "Master seed");
  cmd->add_option("--threads", a.threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
}

lincap_opt_config to_config(const OptArgs& a) {
  lincap_opt_config c;
  lincap_opt_config_default(&c);
  c.restarts = a.restarts;
  c.max_iterations = a.max_iterations;
  c.gradient_tolerance = a.gradient_tolerance;
  c.optimizer = a.optimizer == "momentum" ? LINCAP_OPTIMIZER_MOMENTUM : LINCAP_OPTIMIZER_LBFGS;
  c.probabilities = a.probabilities == "simplex" ? LINCAP_PROBABILITIES_SIMPLEX : LINCAP_PROBABILITIES_UNIFORM;
  c.seed = a.seed;
  c.threads = a.threads;
  return c;
}

void add_opt_metadata(Metadata& meta, const OptArgs& a) {
  meta.emplace_back("seed", std::to_string(a.seed));
  meta.emplace_back("restarts", std::to_string(a.restarts));
  meta.emplace_back("max_iterations", std::to_string(a.max_iterations));
  meta.emplace_back("gradient_tolerance", fmt(a.gradient_tolerance));
  meta.emplace_back("optimizer", a.optimizer);
  meta.emplace_back("probabilities", a.probabilities);
}

struct SpanArgs {
  int samples = 0;
  std::uint64_t seed = 42;
  int threads = 0;
  double tolerance = 1e-8;
  bool strict = false;
};

void add_span(CLI::App* cmd, SpanArgs& a) {
  cmd->add_option("--samples", a.samples, "Random unitaries sampled (0: max(2*bound, bound+8))")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", a.seed, "Master seed");
  cmd->add_option("--threads", a.threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--rank-tol", a.tolerance, "Relative singular value threshold");
  cmd->add_flag("--strict", a.strict, "Fail instead of flagging an indecisive singular gap");
}

lincap_span_options to_span(const SpanArgs& a) {
  lincap_span_options o;
  lincap_span_options_default(&o);
  o.num_samples = a.samples;
  o.seed = a.seed;
  o.threads = a.threads;
  o.rank_tolerance = a.tolerance;
  o.strict = a.strict ? 1 : 0;
  return o;
}

// ---- commands ---------------------------------------------------------------

int cmd_capacity(const ShapeArgs& s, bool as_json, const std::string& output) {
  Handle<lincap_capacity_report, lincap_capacity_free> r;
  check(lincap_capacity_compute(s.photons, s.modes, s.alice_modes, &r.p));
  if (as_json || !output.empty()) {
    CString text;
    check(lincap_capacity_to_json(r.p, &text.p));
    nlohmann::json j = nlohmann::json::parse(text.str());
    Metadata meta = base_metadata("capacity");
    meta.emplace_back("params", shape_string(s));
    j["metadata"] = json_metadata(meta);
    emit(output, j.dump(2) + "\n");
    return kExitOk;
  }
  std::ostringstream out;
  out.precision(12);
  std::uint64_t v = 0;
  out << "photons N            " << s.photons << '\n';
  out << "modes M (M_A, M_B)   " << s.modes << " (" << s.alice_modes << ", " << s.modes - s.alice_modes << ")\n";
  if (lincap_capacity_hilbert_dim(r.p, &v)) {
    out << "hilbert dim d_H      " << v << '\n';
  } else {
    out << "log2 d_H             " << lincap_capacity_log2_hilbert_dim(r.p) << '\n';
  }
  if (lincap_capacity_span_bound(r.p, &v)) {
    out << "span bound d_S       " << v << '\n';
  } else {
    out << "log2 d_S             " << lincap_capacity_log2_span_bound(r.p) << '\n';
  }
  out << "capacity C (bits)    " << lincap_capacity_bits(r.p) << '\n';
  out << "regime               " << lincap_regime_name(lincap_capacity_regime(r.p)) << '\n';
  out << "peak N_A             " << lincap_capacity_peak(r.p) << '\n';
  out << "crossover N_A        " << lincap_capacity_crossover(r.p) << '\n';
  out << "sector terms (N_A: log2 f)\n";
  for (std::size_t k = 0; k < lincap_capacity_num_sectors(r.p); ++k) {
    int na = 0;
    double lf = 0.0;
    check(lincap_capacity_sector_term(r.p, k, &na, &lf));
    out << "  " << na << ": " << lf << '\n';
  }
  std::cout << out.str();
  return kExitOk;
}

int cmd_span(const ShapeArgs& s, const SpanArgs& a, bool as_json, const std::string& output) {
  const lincap_span_options o = to_span(a);
  lincap_span_result r{};
  check(lincap_span_estimate(s.photons, s.modes, s.alice_modes, &o, &r));
  Metadata meta = base_metadata("span");
  meta.emplace_back("params", shape_string(s) + " samples=" + std::to_string(r.num_samples) +
                                  " rank_tol=" + fmt(a.tolerance));
  meta.emplace_back("seed", std::to_string(a.seed));
  const std::string gap = std::isinf(r.singular_gap) ? "inf" : fmt(r.singular_gap);
  if (as_json) {
    nlohmann::json j;
    j["photons"] = s.photons;
    j["modes"] = s.modes;
    j["alice_modes"] = s.alice_modes;
    j["rank"] = r.rank;
    j["bound"] = r.bound;
    j["match"] = r.matches_bound != 0;
    j["num_samples"] = r.num_samples;
    j["singular_gap"] = std::isinf(r.singular_gap) ? nlohmann::json("inf") : nlohmann::json(r.singular_gap);
    j["confident"] = r.confident != 0;
    j["metadata"] = json_metadata(meta);
    emit(output, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << csv_header(meta) << "N,M,M_A,rank,bound,match,singular_gap\n"
        << s.photons << ',' << s.modes << ',' << s.alice_modes << ',' << r.rank << ',' << r.bound << ','
        << (r.matches_bound ? "true" : "false") << ',' << gap << '\n';
    emit(output, out.str());
  }
  if (!r.confident) {
    std::cerr << "warning: singular gap " << gap << " is not decisive\n";
    return kExitInconclusive;
  }
  return kExitOk;
}

int cmd_span_sweep(int max_photons, int max_modes, const SpanArgs& a, const std::string& output) {
  const lincap_span_options o = to_span(a);
  CString csv;
  check(lincap_span_sweep_csv(max_photons, max_modes, &o, &csv.p));
  Metadata meta = base_metadata("span-sweep");
  meta.emplace_back("params", "max_N=" + std::to_string(max_photons) + " max_M=" + std::to_string(max_modes) +
                                  " rank_tol=" + fmt(a.tolerance));
  meta.emplace_back("seed", std::to_string(a.seed));
  emit(output, csv_header(meta) + csv.str());
  return kExitOk;
}

int cmd_optimize(const ShapeArgs& s, int symbols, const OptArgs& a, const std::string& warm_path,
                 std::string output) {
  const lincap_opt_config cfg = to_config(a);
  Handle<lincap_codebook, lincap_codebook_free> warm;
  if (!warm_path.empty()) check(lincap_codebook_from_json(read_file(warm_path).c_str(), &warm.p));
  Handle<lincap_opt_result, lincap_opt_result_free> r;
  check(lincap_optimize(s.photons, s.modes, s.alice_modes, symbols, &cfg, warm.p, &r.p));

  Metadata meta = base_metadata("optimize");
  meta.emplace_back("params", shape_string(s) + " X=" + std::to_string(symbols));
  add_opt_metadata(meta, a);
  if (!warm_path.empty()) meta.emplace_back("warm_start", warm_path);
  CString json;
  check(lincap_opt_result_codebook_json(r.p, json_metadata(meta).dump().c_str(), &json.p));
  if (output.empty()) {
    output = "codebook_N" + std::to_string(s.photons) + "_M" + std::to_string(s.modes) + "_MA" +
             std::to_string(s.alice_modes) + "_X" + std::to_string(symbols) + ".json";
  }
  emit(output, json.str());

  std::ostringstream out;
  out.precision(12);
  out << "S_max bits           " << lincap_opt_result_entropy(r.p) << '\n';
  out << "log2 |X|             " << std::log2(static_cast<double>(symbols)) << '\n';
  out << "converged            " << (lincap_opt_result_converged(r.p) ? "true" : "false") << '\n';
  out << "restarts used        " << lincap_opt_result_restarts_used(r.p) << '\n';
  out << "best restart         " << lincap_opt_result_best_restart(r.p) << '\n';
  out << "max |<psi_i|psi_j>|  " << lincap_opt_result_max_gram_off_diagonal(r.p) << '\n';
  std::cout << out.str();
  return kExitOk;
}

int cmd_sweep(const ShapeArgs& s, const std::string& range, const OptArgs& a, bool cold, const std::string& output) {
  const auto colon = range.find(':');
  int lo = 0;
  int hi = 0;
  try {
    if (colon == std::string::npos) throw std::invalid_argument(range);
    lo = std::stoi(range.substr(0, colon));
    hi = std::stoi(range.substr(colon + 1));
  } catch (const std::exception&) {
    throw Failure{kExitUsage, "error: --x-range expects MIN:MAX"};
  }
  const lincap_opt_config cfg = to_config(a);
  CString csv;
  check(lincap_symbol_sweep_csv(s.photons, s.modes, s.alice_modes, lo, hi, &cfg, cold ? 0 : 1, &csv.p));
  Metadata meta = base_metadata("sweep");
  meta.emplace_back("params", shape_string(s) + " X=" + range + (cold ? " cold-start" : " warm-start"));
  add_opt_metadata(meta, a);
  emit(output, csv_header(meta) + csv.str());
  return kExitOk;
}

int cmd_verify_protocol(const std::string& params_path, bool random, std::uint64_t seed, double tolerance,
                        const std::string& emit_codebook, const std::string& emit_params) {
  Handle<lincap_protocol_params, lincap_protocol_params_free> p;
  std::string source = "default family";
  if (!params_path.empty()) {
    check(lincap_protocol_from_json(read_file(params_path).c_str(), &p.p));
    source = params_path;
  } else if (random) {
    check(lincap_protocol_solve_random(seed, &p.p));
    source = "random solve, seed " + std::to_string(seed);
  } else {
    check(lincap_protocol_default(&p.p));
  }
  Handle<lincap_protocol_report, lincap_protocol_report_free> r;
  check(lincap_protocol_verify(p.p, tolerance, &r.p));
  CString text;
  check(lincap_protocol_report_text(r.p, &text.p));
  std::cout << "parameters           " << source << '\n' << text.str();

  Metadata meta = base_metadata("verify-protocol");
  meta.emplace_back("params", source);
  if (random) meta.emplace_back("seed", std::to_string(seed));
  if (!emit_params.empty()) {
    CString js;
    check(lincap_protocol_to_json(p.p, &js.p));
    emit(emit_params, js.str() + "\n");
  }
  if (!emit_codebook.empty()) {
    CString js;
    check(lincap_protocol_codebook_json(p.p, json_metadata(meta).dump().c_str(), &js.p));
    emit(emit_codebook, js.str());
  }
  return lincap_protocol_report_pass(r.p) ? kExitOk : kExitFailure;
}

int cmd_asymptotics(const std::string& ratio_list, const std::string& n_list, const std::string& output) {
  std::vector<double> ratios;
  std::vector<int> photons;
  std::stringstream rs(ratio_list);
  for (std::string item; std::getline(rs, item, ',');) ratios.push_back(parse_ratio(item));
  std::stringstream ns(n_list);
  for (std::string item; std::getline(ns, item, ',');) {
    try {
      photons.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw Failure{kExitUsage, "error: bad photon count '" + item + "'"};
    }
  }
  CString csv;
  check(lincap_asymptotic_csv(photons.data(), photons.size(), ratios.data(), ratios.size(), &csv.p));
  Metadata meta = base_metadata("asymptotics");
  meta.emplace_back("params", "M=2N ratios=" + ratio_list + " N=" + n_list);
  meta.emplace_back("ratio_order", "rows grouped by ratio in the order given");
  emit(output, csv_header(meta) + csv.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical encoding capacity of linear-optical quantum channels"};
  app.set_version_flag("--version", std::string(lincap_version()));
  app.require_subcommand(1);

  ShapeArgs shape;
  OptArgs opt;
  SpanArgs span;
  std::string output;
  bool as_json = false;

  auto* capacity = app.add_subcommand("capacity", "Analytic span bound and capacity");
  add_shape(capacity, shape);
  capacity->add_flag("--json", as_json, "Emit JSON");
  capacity->add_option("-o,--output", output, "Write JSON to this file");

  auto* span_cmd = app.add_subcommand("span", "Numerical span rank of the reachable ensemble");
  add_shape(span_cmd, shape);
  add_span(span_cmd, span);
  span_cmd->add_flag("--json", as_json, "Emit JSON instead of CSV");
  span_cmd->add_option("-o,--output", output, "Output file");

  int max_photons = 3;
  int max_modes = 6;
  auto* span_sweep = app.add_subcommand("span-sweep", "Span rank against the bound over a grid");
  span_sweep->add_option("--max-photons", max_photons, "Largest N")->check(CLI::PositiveNumber);
  span_sweep->add_option("--max-modes", max_modes, "Largest M")->check(CLI::Range(2, 64));
  add_span(span_sweep, span);
  span_sweep->add_option("-o,--output", output, "Output CSV file");

  int symbols = 0;
  std::string warm_path;
  auto* optimize = app.add_subcommand("optimize", "Maximize S(rho) over codebooks of a given size");
  add_shape(optimize, shape);
  optimize->add_option("-X,--symbols", symbols, "Codebook size |X|")->required()->check(CLI::Range(2, 1 << 20));
  add_opt(optimize, opt);
  optimize->add_option("--warm-start", warm_path, "Codebook JSON to start restart 0 from");
  optimize->add_option("-o,--output", output, "Codebook JSON path");

  std::string range = "2:12";
  bool cold = false;
  auto* sweep = app.add_subcommand("sweep", "S_max against codebook size");
  add_shape(sweep, shape);
  sweep->add_option("--x-range", range, "MIN:MAX codebook sizes");
  sweep->add_flag("--cold-start", cold, "Do not carry codebooks between sizes");
  add_opt(sweep, opt);
  sweep->add_option("-o,--output", output, "Output CSV file");

  std::string params_path;
  std::string emit_codebook;
  std::string emit_params;
  bool random_params = false;
  std::uint64_t protocol_seed = 42;
  double tolerance = 1e-10;
  auto* verify = app.add_subcommand("verify-protocol", "Check the eight-symbol two-photon code");
  verify->add_option("--params", params_path, "Parameter JSON ({c, d, q3})");
  verify->add_flag("--random", random_params, "Solve for a random member of the constraint set");
  verify->add_option("--seed", protocol_seed, "Seed for --random");
  verify->add_option("--tol", tolerance, "Off-diagonal Gram tolerance");
  verify->add_option("--emit-codebook", emit_codebook, "Write the code as a codebook JSON");
  verify->add_option("--emit-params", emit_params, "Write the parameters as JSON");

  std::string ratio_list = "1/3,1,3";
  std::string n_list = "2,4,8,16,32,64,128";
  auto* asym = app.add_subcommand("asymptotics", "log2 d_S against log2 d_H for M = 2N");
  asym->add_option("--ratios", ratio_list, "Comma-separated M_A/M_B ratios");
  asym->add_option("--n-list", n_list, "Comma-separated photon numbers");
  asym->add_option("-o,--output", output, "Output CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*capacity) return cmd_capacity(shape, as_json, output);
    if (*span_cmd) return cmd_span(shape, span, as_json, output);
    if (*span_sweep) return cmd_span_sweep(max_photons, max_modes, span, output);
    if (*optimize) return cmd_optimize(shape, symbols, opt, warm_path, output);
    if (*sweep) return cmd_sweep(shape, range, opt, cold, output);
    if (*verify) {
      return cmd_verify_protocol(params_path, random_params, protocol_seed, tolerance, emit_codebook, emit_params);
    }
    if (*asym) return cmd_asymptotics(ratio_list, n_list, output);
  } catch (const Failure& f) {
    std::cerr << f.message << '\n';
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
