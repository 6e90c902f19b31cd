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

#include <map>
#include <optional>
#include <string>

#include "lincap/entropyopt.hpp"

namespace lincap {

inline constexpr const char* kCodebookFormat = "lincap-codebook";
inline constexpr int kCodebookVersion = 1;

struct CodebookFile {
  Codebook codebook;
  int alice_modes = 0;
  std::optional<double> entropy_bits;
  /// Free-form string pairs written under "metadata".
  std::map<std::string, std::string> metadata;
};

/// Serializes a codebook. Complex numbers are [re, im] pairs; unitaries are
/// row-major lists of M_A^2 pairs. Numbers use round-trip precision.
std::string codebook_to_json(const CodebookFile& file);

/// Parses and validates a codebook file: basis shape and order, amplitude
/// count, normalization within 1e-8, unitarity within 1e-8, probabilities.
/// Throws ErrorCode::Parse for malformed input.
CodebookFile codebook_from_json(const std::string& text);

}  // namespace lincap
