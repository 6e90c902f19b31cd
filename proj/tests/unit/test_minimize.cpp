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

#include <doctest.h>

#include <cmath>

#include "lincap/minimize.hpp"

using namespace lincap;

namespace {

double rosenbrock(const RVector& x, RVector& g) {
  g.resize(x.size());
  g.setZero();
  double f = 0.0;
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
    const double a = x(i + 1) - x(i) * x(i);
    const double b = 1.0 - x(i);
    f += 100.0 * a * a + b * b;
    g(i) += -400.0 * x(i) * a - 2.0 * b;
    g(i + 1) += 200.0 * a;
  }
  return f;
}

double quadratic(const RVector& x, RVector& g) {
  // f = sum_i (i + 1) (x_i - 1)^2
  g.resize(x.size());
  double f = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double w = static_cast<double>(i + 1);
    f += w * (x(i) - 1.0) * (x(i) - 1.0);
    g(i) = 2.0 * w * (x(i) - 1.0);
  }
  return f;
}

}  // namespace

TEST_CASE("L-BFGS solves the Rosenbrock valley") {
  RVector x0(6);
  x0 << -1.2, 1.0, -1.2, 1.0, -1.2, 1.0;
  MinimizeOptions o;
  o.gradient_tolerance = 1e-9;
  const MinimizeResult r = minimize_lbfgs(rosenbrock, x0, o);
  CHECK(r.converged);
  CHECK((r.x - RVector::Ones(6)).norm() < 1e-6);
  CHECK(r.value < 1e-12);
  // Monotone decrease under the line search.
  for (std::size_t i = 1; i < r.trajectory.size(); ++i) CHECK(r.trajectory[i] <= r.trajectory[i - 1]);
}

TEST_CASE("L-BFGS on an ill-conditioned quadratic") {
  const MinimizeResult r = minimize_lbfgs(quadratic, RVector::Zero(20), {});
  CHECK(r.converged);
  CHECK(r.gradient_norm <= 1e-7);
  CHECK((r.x - RVector::Ones(20)).norm() < 1e-7);
}

TEST_CASE("already stationary start returns immediately") {
  const MinimizeResult r = minimize_lbfgs(quadratic, RVector::Ones(3), {});
  CHECK(r.converged);
  CHECK(r.iterations == 0);
  CHECK(r.trajectory.empty());
}

TEST_CASE("target value stops early") {
  MinimizeOptions o;
  o.target = 1.0;
  const MinimizeResult r = minimize_lbfgs(quadratic, RVector::Constant(10, 5.0), o);
  CHECK(r.value <= 1.0);
  CHECK(r.value > 0.0);
  CHECK_FALSE(r.converged);
}

TEST_CASE("iteration cap is honored") {
  MinimizeOptions o;
  o.max_iterations = 3;
  RVector x0(2);
  x0 << -1.2, 1.0;
  const MinimizeResult r = minimize_lbfgs(rosenbrock, x0, o);
  CHECK(r.iterations <= 3);
  CHECK_FALSE(r.converged);
}

TEST_CASE("momentum descent converges on a quadratic") {
  MinimizeOptions o;
  o.max_iterations = 20000;
  o.momentum_step = 0.05;
  o.gradient_tolerance = 1e-6;
  const MinimizeResult r = minimize_momentum(quadratic, RVector::Zero(5), o);
  CHECK(r.converged);
  CHECK((r.x - RVector::Ones(5)).norm() < 1e-5);
}
