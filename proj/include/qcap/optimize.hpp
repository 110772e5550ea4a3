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

#ifndef QCAP_OPTIMIZE_HPP
#define QCAP_OPTIMIZE_HPP

#include <cstddef>
#include <functional>

#include "qcap/numerics.hpp"

namespace qcap {

/// Objective returning f(x) and writing df/dx into `grad`.
using Objective = std::function<double(const RealVector& x, RealVector& grad)>;

struct LbfgsOptions {
  int max_iters = 2000;
  /// Stop when the relative decrease of f stays below this for two
  /// consecutive iterations.
  double conv_tol = 1e-8;
  double grad_tol = 1e-10;
  /// Length of the very first trial step (before curvature is known).
  double step_init = 0.1;
  int memory = 12;
};

struct LbfgsResult {
  RealVector x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Limited-memory BFGS with a strong Wolfe line search. Minimizes.
LbfgsResult minimize_lbfgs(const Objective& f, RealVector x0, const LbfgsOptions& opts = {});

/// Central finite-difference gradient; used to check analytic gradients.
RealVector finite_difference_gradient(const Objective& f, const RealVector& x, double step = 1e-5);

// ---------------------------------------------------------------------------
// Parametrizations used by the capacity optimizers.

/// Packs a complex matrix into [Re(row-major), Im(row-major)].
RealVector pack(const ComplexMatrix& m);
ComplexMatrix unpack(const RealVector& x, std::size_t rows, std::size_t cols,
                     std::size_t offset = 0);

}  // namespace qcap

#endif  // QCAP_OPTIMIZE_HPP
