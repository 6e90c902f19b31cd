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

#include "lincap/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace lincap {

namespace {

struct LinePoint {
  double step = 0.0;
  double value = 0.0;
  double slope = 0.0;  // directional derivative
};

// Minimizer of the cubic through two points with values and slopes; falls
// back to bisection when the interpolant is degenerate or out of bracket.
double cubic_step(const LinePoint& a, const LinePoint& b) {
  const double d1 = a.slope + b.slope - 3.0 * (a.value - b.value) / (a.step - b.step);
  const double disc = d1 * d1 - a.slope * b.slope;
  const double lo = std::min(a.step, b.step);
  const double hi = std::max(a.step, b.step);
  if (disc >= 0.0) {
    const double d2 = std::copysign(std::sqrt(disc), b.step - a.step);
    const double denom = b.slope - a.slope + 2.0 * d2;
    if (denom != 0.0) {
      const double t = b.step - (b.step - a.step) * (b.slope + d2 - d1) / denom;
      const double margin = 0.1 * (hi - lo);
      if (t > lo + margin && t < hi - margin) return t;
    }
  }
  return 0.5 * (lo + hi);
}

struct LineSearchResult {
  bool ok = false;
  double step = 0.0;
  double value = 0.0;
  RVector x;
  RVector gradient;
};

// Strong Wolfe line search (bracketing phase followed by zoom).
LineSearchResult wolfe_search(const GradientFunction& f, const RVector& x, double f0, const RVector& g0,
                              const RVector& dir, double initial_step) {
  constexpr double c1 = 1e-4;
  constexpr double c2 = 0.9;
  constexpr int max_evals = 40;

  const double slope0 = g0.dot(dir);
  LineSearchResult out;
  RVector xt(x.size());
  RVector gt(x.size());

  auto eval = [&](double step) {
    xt = x + step * dir;
    const double v = f(xt, gt);
    return LinePoint{step, v, gt.dot(dir)};
  };
  auto accept = [&](const LinePoint& p) {
    out.ok = true;
    out.step = p.step;
    out.value = p.value;
    out.x = xt;
    out.gradient = gt;
  };

  LinePoint prev{0.0, f0, slope0};
  double step = initial_step;
  int evals = 0;
  LinePoint lo{};
  LinePoint hi{};
  bool bracketed = false;

  while (evals < max_evals) {
    const LinePoint cur = eval(step);
    ++evals;
    if (!std::isfinite(cur.value)) {
      step *= 0.1;
      continue;
    }
    if (cur.value > f0 + c1 * step * slope0 || (evals > 1 && cur.value >= prev.value)) {
      lo = prev;
      hi = cur;
      bracketed = true;
      break;
    }
    if (std::abs(cur.slope) <= -c2 * slope0) {
      accept(cur);
      return out;
    }
    if (cur.slope >= 0.0) {
      lo = cur;
      hi = prev;
      bracketed = true;
      break;
    }
    prev = cur;
    step *= 2.0;
  }
  if (!bracketed) return out;

  while (evals < max_evals) {
    const double trial = cubic_step(lo, hi);
    const LinePoint cur = eval(trial);
    ++evals;
    if (!std::isfinite(cur.value) || cur.value > f0 + c1 * trial * slope0 || cur.value >= lo.value) {
      hi = cur;
    } else {
      if (std::abs(cur.slope) <= -c2 * slope0) {
        accept(cur);
        return out;
      }
      if (cur.slope * (hi.step - lo.step) >= 0.0) hi = lo;
      lo = cur;
    }
    if (std::abs(hi.step - lo.step) < 1e-16 * std::max(1.0, std::abs(lo.step))) break;
  }
  // Settle for sufficient decrease if the curvature condition never held.
  if (lo.step > 0.0 && lo.value < f0) {
    eval(lo.step);
    accept(lo);
    out.value = lo.value;
  }
  return out;
}

}  // namespace

MinimizeResult minimize_lbfgs(const GradientFunction& f, RVector x0, const MinimizeOptions& options) {
  MinimizeResult res;
  RVector x = std::move(x0);
  RVector g(x.size());
  double fx = f(x, g);
  std::deque<RVector> s_hist;
  std::deque<RVector> y_hist;
  std::deque<double> rho_hist;

  int stalls = 0;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const double gnorm = g.norm();
    if (gnorm <= options.gradient_tolerance) {
      res.converged = true;
      break;
    }
    if (fx <= options.target) break;

    // Two-loop recursion for d = -H g.
    RVector q = g;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t i = s_hist.size(); i-- > 0;) {
      alpha[i] = rho_hist[i] * s_hist[i].dot(q);
      q -= alpha[i] * y_hist[i];
    }
    double gamma = 1.0;
    if (!s_hist.empty()) gamma = s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    RVector d = gamma * q;
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      const double beta = rho_hist[i] * y_hist[i].dot(d);
      d += (alpha[i] - beta) * s_hist[i];
    }
    d = -d;
    if (d.dot(g) >= 0.0) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      d = -g;
    }

    const double initial = s_hist.empty() ? std::min(1.0, 1.0 / gnorm) : 1.0;
    LineSearchResult ls = wolfe_search(f, x, fx, g, d, initial);
    if (!ls.ok) {
      if (s_hist.empty()) break;
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      continue;
    }

    RVector s = ls.x - x;
    RVector y = ls.gradient - g;
    const double sy = s.dot(y);
    const double previous = fx;
    x = std::move(ls.x);
    g = std::move(ls.gradient);
    fx = ls.value;
    res.trajectory.push_back(fx);
    res.iterations = iter + 1;

    if (sy > 1e-12 * s.norm() * y.norm()) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > options.memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }

    // Stop on a long run of negligible progress.
    if (previous - fx <= 1e-15 * std::max(1.0, std::abs(fx))) {
      if (++stalls >= 20) break;
    } else {
      stalls = 0;
    }
  }
  res.gradient_norm = g.norm();
  if (res.gradient_norm <= options.gradient_tolerance) res.converged = true;
  res.x = std::move(x);
  res.value = fx;
  return res;
}

MinimizeResult minimize_momentum(const GradientFunction& f, RVector x0, const MinimizeOptions& options) {
  MinimizeResult res;
  RVector x = std::move(x0);
  RVector g(x.size());
  double fx = f(x, g);
  RVector velocity = RVector::Zero(x.size());
  double step = options.momentum_step;
  RVector trial(x.size());
  RVector gt(x.size());

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    if (g.norm() <= options.gradient_tolerance) {
      res.converged = true;
      break;
    }
    if (fx <= options.target) break;
    const RVector v_next = options.momentum * velocity - step * g;
    trial = x + v_next;
    const double ft = f(trial, gt);
    if (!std::isfinite(ft) || ft > fx) {
      velocity.setZero();
      step *= 0.5;
      if (step < 1e-14) break;
      continue;
    }
    velocity = v_next;
    x = trial;
    g = gt;
    fx = ft;
    res.trajectory.push_back(fx);
    res.iterations = iter + 1;
  }
  res.gradient_norm = g.norm();
  if (res.gradient_norm <= options.gradient_tolerance) res.converged = true;
  res.x = std::move(x);
  res.value = fx;
  return res;
}

}  // namespace lincap
