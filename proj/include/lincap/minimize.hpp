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

#include <functional>
#include <limits>
#include <vector>

#include "lincap/types.hpp"

namespace lincap {

/// Returns f(x) and writes grad f(x).
using GradientFunction = std::function<double(const RVector& x, RVector& gradient)>;

struct MinimizeOptions {
  int max_iterations = 2000;
  double gradient_tolerance = 1e-7;  // on the Euclidean gradient norm
  int memory = 10;                   // L-BFGS history length
  double momentum_step = 0.05;
  double momentum = 0.9;
  /// Stop early once f <= target (e.g. a known lower bound).
  double target = -std::numeric_limits<double>::infinity();
};

struct MinimizeResult {
  RVector x;
  double value = 0.0;
  double gradient_norm = 0.0;
  bool converged = false;  // gradient norm reached the tolerance
  int iterations = 0;
  std::vector<double> trajectory;  // f after each iteration
};

/// Limited-memory BFGS with a strong-Wolfe line search.
MinimizeResult minimize_lbfgs(const GradientFunction& f, RVector x0, const MinimizeOptions& options);

/// Gradient descent with heavy-ball momentum and step backoff on increase.
MinimizeResult minimize_momentum(const GradientFunction& f, RVector x0, const MinimizeOptions& options);

}  // namespace lincap
