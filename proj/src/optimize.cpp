// Copyright 2026 The qcap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcap/optimize.hpp"

#include <cmath>
#include <deque>
#include <limits>

namespace qcap {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kCurvature = 0.9;
constexpr int kMaxLineSearchEvals = 40;

struct LinePoint {
  double step = 0.0;
  double value = 0.0;
  double slope = 0.0;
};

// Minimizer of the cubic through two points with known slopes, or the
// bisection point when the cubic is unusable or lands near an end.
double interpolate(const LinePoint& a, const LinePoint& b) {
  const double d1 = a.slope + b.slope - 3 * (a.value - b.value) / (a.step - b.step);
  const double disc = d1 * d1 - a.slope * b.slope;
  const double mid = 0.5 * (a.step + b.step);
  if (disc < 0) return mid;
  const double d2 = std::copysign(std::sqrt(disc), b.step - a.step);
  const double t = b.step - (b.step - a.step) * (b.slope + d2 - d1) / (b.slope - a.slope + 2 * d2);
  const double lo = std::min(a.step, b.step), hi = std::max(a.step, b.step);
  const double margin = 0.1 * (hi - lo);
  if (!std::isfinite(t) || t < lo + margin || t > hi - margin) return mid;
  return t;
}

// Strong Wolfe line search along d. On success x_new, g_new hold the accepted
// point. Falls back to the best sufficient-decrease point seen.
bool wolfe_search(const Objective& f, const RealVector& x, double fx, const RealVector& d,
                  double slope0, double step, RealVector& x_new, RealVector& g_new,
                  double& f_new) {
  RealVector g_trial(x.size());
  LinePoint prev{0.0, fx, slope0};
  LinePoint best{0.0, fx, slope0};
  RealVector best_g;
  int evals = 0;

  const auto eval = [&](double a) {
    x_new = x + a * d;
    const double v = f(x_new, g_trial);
    ++evals;
    return LinePoint{a, std::isfinite(v) ? v : std::numeric_limits<double>::infinity(),
                     g_trial.dot(d)};
  };
  const auto sufficient = [&](const LinePoint& p) {
    return p.value <= fx + kArmijo * p.step * slope0;
  };
  const auto note = [&](const LinePoint& p) {
    if (sufficient(p) && p.value < best.value) {
      best = p;
      best_g = g_trial;
    }
  };
  const auto finish = [&](const LinePoint& p) {
    x_new = x + p.step * d;
    g_new = g_trial;
    f_new = p.value;
    return true;
  };

  const auto zoom = [&](LinePoint lo, LinePoint hi) {
    while (evals < kMaxLineSearchEvals) {
      const double a = interpolate(lo, hi);
      if (std::abs(hi.step - lo.step) <= 1e-16 * std::max(1.0, std::abs(a))) break;
      const LinePoint p = eval(a);
      note(p);
      if (!sufficient(p) || p.value >= lo.value) {
        hi = p;
      } else {
        if (std::abs(p.slope) <= -kCurvature * slope0) return finish(p);
        if (p.slope * (hi.step - lo.step) >= 0) hi = lo;
        lo = p;
      }
    }
    return false;
  };

  bool done = false;
  while (!done && evals < kMaxLineSearchEvals) {
    const LinePoint p = eval(step);
    note(p);
    if (!sufficient(p) || (evals > 1 && p.value >= prev.value)) {
      done = zoom(prev, p);
      break;
    }
    if (std::abs(p.slope) <= -kCurvature * slope0) return finish(p);
    if (p.slope >= 0) {
      done = zoom(p, prev);
      break;
    }
    prev = p;
    step *= 2;
  }
  if (done) return true;
  if (best.step > 0) {
    x_new = x + best.step * d;
    g_new = best_g;
    f_new = best.value;
    return true;
  }
  return false;
}

}  // namespace

LbfgsResult minimize_lbfgs(const Objective& f, RealVector x, const LbfgsOptions& opts) {
  const Eigen::Index n = x.size();
  RealVector g(n);
  double fx = f(x, g);
  LbfgsResult result;
  if (!std::isfinite(fx)) throw Error("minimize_lbfgs: objective is not finite at the start point");

  std::deque<RealVector> s_hist, y_hist;
  std::deque<double> rho_hist;
  int stall = 0;
  RealVector x_new(n), g_new(n), d(n);

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    result.iterations = iter + 1;
    if (g.lpNorm<Eigen::Infinity>() <= opts.grad_tol) {
      result.converged = true;
      break;
    }

    // Two-loop recursion.
    d = -g;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t k = s_hist.size(); k-- > 0;) {
      alpha[k] = rho_hist[k] * s_hist[k].dot(d);
      d -= alpha[k] * y_hist[k];
    }
    double step = 1.0;
    if (!s_hist.empty()) {
      const double gamma = s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
      d *= gamma;
    } else {
      step = opts.step_init / std::max(1.0, g.norm());
    }
    for (std::size_t k = 0; k < s_hist.size(); ++k) {
      const double beta = rho_hist[k] * y_hist[k].dot(d);
      d += (alpha[k] - beta) * s_hist[k];
    }
    double slope = g.dot(d);
    if (!(slope < 0)) {
      // Not a descent direction; restart from steepest descent.
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      d = -g;
      slope = -g.squaredNorm();
      step = opts.step_init / std::max(1.0, g.norm());
    }

    double f_new = 0.0;
    if (!wolfe_search(f, x, fx, d, slope, step, x_new, g_new, f_new)) {
      result.converged = true;  // no further decrease representable
      break;
    }

    const RealVector s = x_new - x;
    const RealVector y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      s_hist.push_back(s);
      y_hist.push_back(y);
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > opts.memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }

    const double decrease = fx - f_new;
    x.swap(x_new);
    g.swap(g_new);
    fx = f_new;
    if (decrease <= opts.conv_tol * std::max(1.0, std::abs(fx))) {
      if (++stall >= 2) {
        result.converged = true;
        break;
      }
    } else {
      stall = 0;
    }
  }
  result.x = std::move(x);
  result.value = fx;
  return result;
}

RealVector finite_difference_gradient(const Objective& f, const RealVector& x, double step) {
  RealVector grad(x.size()), scratch(x.size());
  RealVector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + step;
    const double up = f(probe, scratch);
    probe(i) = x(i) - step;
    const double down = f(probe, scratch);
    probe(i) = x(i);
    grad(i) = (up - down) / (2 * step);
  }
  return grad;
}

RealVector pack(const ComplexMatrix& m) {
  const Eigen::Index n = m.size();
  RealVector x(2 * n);
  Eigen::Index k = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c, ++k) {
      x(k) = m(r, c).real();
      x(n + k) = m(r, c).imag();
    }
  }
  return x;
}

ComplexMatrix unpack(const RealVector& x, std::size_t rows, std::size_t cols, std::size_t offset) {
  const auto n = static_cast<Eigen::Index>(rows * cols);
  const auto off = static_cast<Eigen::Index>(offset);
  ComplexMatrix m(rows, cols);
  Eigen::Index k = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c, ++k) m(r, c) = Complex(x(off + k), x(off + n + k));
  }
  return m;
}

}  // namespace qcap
