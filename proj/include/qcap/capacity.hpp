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

#ifndef QCAP_CAPACITY_HPP
#define QCAP_CAPACITY_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qcap/channels.hpp"
#include "qcap/entropics.hpp"
#include "qcap/optimize.hpp"
#include "qcap/zoo.hpp"

namespace qcap {

struct OptimizerOptions {
  int restarts = 32;
  int max_iters = 2000;
  double step_init = 0.1;
  double conv_tol = 1e-8;
  std::uint64_t seed = 1;

  void check() const;
};

/// A feasible point and the functional evaluated there: always a lower
/// bound on the true maximum, never a claim of optimality.
struct CapacityEstimate {
  double value = 0.0;
  std::optional<DensityMatrix> argmax_state;
  std::optional<Ensemble> argmax_ensemble;
  int restarts_used = 0;
  /// Whether the restart that produced `value` met its stopping criterion.
  bool converged = false;
};

/// max_rho I_c(rho, ch) with rho = L L^dag / Tr(L L^dag). Starts from each
/// of `initial_states` (in order) and then from opts.restarts random
/// factors. Restart r of the random phase uses derive_seed(opts.seed, r).
/// Ties go to the lowest start index.
CapacityEstimate maximize_coherent_information(const KrausChannel& ch,
                                               const OptimizerOptions& opts = {},
                                               std::span<const DensityMatrix> initial_states = {});

/// max chi over ensembles of m pure states; m = 0 means dim_in^2.
CapacityEstimate maximize_holevo(const KrausChannel& ch, int m = 0,
                                 const OptimizerOptions& opts = {});

/// max(0, 1 - H(1-q, q/3, q/3, q/3)), the single-use depolarizing value
/// attained by the maximally mixed input.
double depolarizing_ic_closed_form(double q);

/// Zero of 1 - H(1-q, q/3, q/3, q/3) on [0.1, 0.25] by bisection.
double depolarizing_threshold(double tol = 1e-12);

// ---------------------------------------------------------------------------
// Three-qubit repetition code over the depolarizing channel

/// Syndromes are indexed s = 2*s1 + s2, where s1 (s2) is the measured value
/// of qubit 1 (2) after the decoder's two controlled-NOTs. Residual Pauli
/// vectors are ordered (I, X, Y, Z).
struct SyndromeTable {
  std::array<double, 4> prob{};
  std::array<std::array<double, 4>, 4> residual{};

  void validate(double tol = 1e-12) const;
};

struct DecodedPattern {
  int syndrome;  // 2*s1 + s2
  int residual;  // 0..3 for I, X, Y, Z on qubit 3 after correction
};

/// Decoder outcome for Pauli errors a, b, c (0..3 = I, X, Y, Z) on qubits
/// 1, 2, 3. The all-X pattern gives syndrome 00 and leaves X on qubit 3.
DecodedPattern repetition_decode(int a, int b, int c);

/// Enumerates all 64 Pauli error patterns. Decoder: CNOT 3->1, CNOT 3->2,
/// measure qubits 1 and 2, apply X to qubit 3 iff s1 = s2 = 1.
SyndromeTable repetition_syndrome_table(double q);

struct RepetitionValue {
  /// sum_s p(s) (1 - H(q_s)) over the three channel uses.
  double total = 0.0;
  /// total / 3.
  double rate = 0.0;
};

RepetitionValue repetition_coherent_information(double q);

/// Same quantity by explicit 16-dimensional density-matrix evolution of
/// (|0000> + |1111>)/sqrt(2) through dep(q)^{x3} (x) id, the decoder
/// unitary, projective measurement of qubits 1-2 and the conditional
/// correction. Returns the total (not the rate).
double repetition_brute_force_oracle(double q);

// ---------------------------------------------------------------------------
// Finite-n and two-channel experiments

inline constexpr std::size_t kMaxMultiCopyDim = 64;

/// (1/n) max I_c over ch^{(x)n}. Throws if dim_in^n > kMaxMultiCopyDim.
CapacityEstimate multi_copy_ic(const KrausChannel& ch, int n, const OptimizerOptions& opts = {});

/// Structured starting points for the joint Horodecki (x) erasure search:
/// maximally entangled and product states across the two 4-dim inputs.
std::vector<DensityMatrix> superactivation_initial_states();

struct SuperactivationPoint {
  double q = 0.0;
  PptResult ppt;
  /// Filled only for PPT-certified q.
  std::optional<CapacityEstimate> horodecki_ceiling;
  std::optional<CapacityEstimate> erasure_ceiling;
  std::optional<CapacityEstimate> joint;
};

struct SuperactivationReport {
  std::vector<SuperactivationPoint> points;
  /// Index into points of the best joint value; -1 if no q was PPT.
  int best_index = -1;
  double best_value = 0.0;
};

SuperactivationReport superactivation_search(std::span<const double> q_grid,
                                             const OptimizerOptions& opts = {});

/// p N_H (x) |0><0| + (1-p) N_E (x) |1><1| at Horodecki parameter q.
KrausChannel nonconvexity_mixture(double p, double q = kHorodeckiPptQ);

struct TwoShotValues {
  /// I_c(rho, M_p (x) M_p).
  double direct = 0.0;
  /// Four flag branches weighted by p^2, p(1-p), (1-p)p, (1-p)^2.
  double expansion = 0.0;
  /// I_c(rho, A (x) B) for (A, B) in (HH, HE, EH, EE) order.
  std::array<double, 4> branches{};
};

/// rho acts on the 16-dim input of M_p (x) M_p.
TwoShotValues nonconvexity_two_shot(double p, const DensityMatrix& rho,
                                    double q = kHorodeckiPptQ);

namespace detail {

RealVector softmax(const RealVector& logits);

/// -I_c(rho, ch) over the packed d x d factor L of rho = L L^dag / Tr.
Objective negative_coherent_information(const KrausChannel& ch);

/// -chi over x = [m logits, packed d x m matrix of unnormalized states].
Objective negative_holevo(const KrausChannel& ch, std::size_t m);

}  // namespace detail

}  // namespace qcap

#endif  // QCAP_CAPACITY_HPP
