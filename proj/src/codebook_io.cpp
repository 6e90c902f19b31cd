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

#include "lincap/codebook_io.hpp"

#include <cmath>

#include <json.hpp>

#include "lincap/error.hpp"

namespace lincap {

namespace {

constexpr const char* kOrder = "descending-lexicographic";

using nlohmann::json;

json complex_pair(Complex z) { return json::array({z.real(), z.imag()}); }

Complex parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::Parse, "complex numbers are [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string codebook_to_json(const CodebookFile& file) {
  const Codebook& cb = file.codebook;
  if (!cb.psi1.basis) throw Error(ErrorCode::InvalidArgument, "codebook has no basis");
  const FockBasis& basis = *cb.psi1.basis;

  json j;
  j["format"] = kCodebookFormat;
  j["version"] = kCodebookVersion;
  j["basis"] = {{"photons", basis.photons()},
                {"modes", basis.modes()},
                {"alice_modes", file.alice_modes},
                {"dimension", basis.size()},
                {"order", kOrder}};
  json psi = json::array();
  for (Eigen::Index k = 0; k < cb.psi1.amplitudes.size(); ++k) psi.push_back(complex_pair(cb.psi1.amplitudes(k)));
  j["psi1"] = std::move(psi);
  json unitaries = json::array();
  for (const ModeUnitary& u : cb.unitaries) {
    json entries = json::array();
    for (Eigen::Index r = 0; r < u.matrix().rows(); ++r) {
      for (Eigen::Index c = 0; c < u.matrix().cols(); ++c) entries.push_back(complex_pair(u.matrix()(r, c)));
    }
    unitaries.push_back(std::move(entries));
  }
  j["unitaries"] = std::move(unitaries);
  j["probabilities"] = cb.probabilities;
  if (file.entropy_bits) j["s_bits"] = *file.entropy_bits;
  j["metadata"] = file.metadata;
  return j.dump(2) + "\n";
}

CodebookFile codebook_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("codebook is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kCodebookFormat) {
      throw Error(ErrorCode::Parse, "not a lincap codebook");
    }
    if (j.at("version").get<int>() != kCodebookVersion) {
      throw Error(ErrorCode::Parse, "unsupported codebook version");
    }
    const json& b = j.at("basis");
    const int photons = b.at("photons").get<int>();
    const int modes = b.at("modes").get<int>();
    const int alice_modes = b.at("alice_modes").get<int>();
    if (b.contains("order") && b.at("order").get<std::string>() != kOrder) {
      throw Error(ErrorCode::Parse, "unsupported basis order");
    }

    CodebookFile file;
    file.alice_modes = alice_modes;
    auto decomposition = sector_split(enumerate_basis(photons, modes), alice_modes);
    const auto dim = static_cast<Eigen::Index>(decomposition->basis().size());
    if (b.contains("dimension") && b.at("dimension").get<Eigen::Index>() != dim) {
      throw Error(ErrorCode::Parse, "basis dimension does not match photons and modes");
    }

    const json& psi = j.at("psi1");
    if (!psi.is_array() || static_cast<Eigen::Index>(psi.size()) != dim) {
      throw Error(ErrorCode::Parse, "psi1 needs one amplitude per basis state");
    }
    CVector amps(dim);
    for (Eigen::Index k = 0; k < dim; ++k) amps(k) = parse_complex(psi[static_cast<std::size_t>(k)]);
    if (std::abs(amps.norm() - 1.0) > 1e-8) throw Error(ErrorCode::Parse, "psi1 is not normalized");
    file.codebook.psi1 = StateVector{decomposition->basis_ptr(), amps};

    for (const json& entries : j.at("unitaries")) {
      if (!entries.is_array() || static_cast<int>(entries.size()) != alice_modes * alice_modes) {
        throw Error(ErrorCode::Parse, "each unitary needs M_A^2 entries");
      }
      CMatrix u(alice_modes, alice_modes);
      for (int r = 0; r < alice_modes; ++r) {
        for (int c = 0; c < alice_modes; ++c) {
          u(r, c) = parse_complex(entries[static_cast<std::size_t>(r * alice_modes + c)]);
        }
      }
      if (unitarity_defect(u) > 1e-8) throw Error(ErrorCode::Parse, "codebook matrix is not unitary");
      file.codebook.unitaries.emplace_back(u, 1e-8);
    }
    if (j.contains("probabilities")) {
      file.codebook.probabilities = j.at("probabilities").get<std::vector<double>>();
    } else {
      const std::size_t n = file.codebook.unitaries.size();
      file.codebook.probabilities.assign(n, n ? 1.0 / static_cast<double>(n) : 0.0);
    }
    if (j.contains("s_bits")) file.entropy_bits = j.at("s_bits").get<double>();
    if (j.contains("metadata") && j.at("metadata").is_object()) {
      for (const auto& [key, value] : j.at("metadata").items()) {
        file.metadata[key] = value.is_string() ? value.get<std::string>() : value.dump();
      }
    }
    try {
      validate_codebook(file.codebook, *decomposition);
    } catch (const Error& e) {
      throw Error(ErrorCode::Parse, e.what());
    }
    return file;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed codebook: ") + e.what());
  }
}

}  // namespace lincap
