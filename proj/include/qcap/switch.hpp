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

#ifndef QCAP_SWITCH_HPP
#define QCAP_SWITCH_HPP

#include <string>
#include <utility>
#include <vector>

#include "qcap/capacity.hpp"
#include "qcap/channels.hpp"

namespace qcap {

/// Two-channel quantum switch. The control qubit is the last tensor factor.
struct SwitchedChannel {
  /// S_ij = N_i M_j (x) |0><0| + M_j N_i (x) |1><1| on system (x) control.
  KrausChannel supermap;
  /// rho -> supermap(rho (x) rho_c): system in, system (x) control out.
  KrausChannel effective;
  DensityMatrix control;
  std::pair<KrausChannel, KrausChannel> factors;
  /// Number of (i, j) Kraus pairs, i.e. supermap.num_kraus().
  std::size_t n_kraus_pairs = 0;
};

SwitchedChannel quantum_switch(const KrausChannel& n, const KrausChannel& m,
                               const DensityMatrix& rho_c);

/// [[p, sqrt(p(1-p))], [sqrt(p(1-p)), 1-p]], i.e. sqrt(p)|0> + sqrt(1-p)|1>.
DensityMatrix switch_control(double p);

/// I/d (x) diag(p, 1-p) + rho/d^2 (x) sqrt(p(1-p)) X.
DensityMatrix switched_cd_output_formula(const DensityMatrix& rho, double p, std::size_t d);

/// Output spectrum of the switched completely depolarizing channel (p = 1/2)
/// on any pure input: (d+1)/(2d^2), (d-1)/(2d^2) and 1/(2d) with
/// multiplicity 2(d-1).
RealVector switched_cd_min_output_spectrum(std::size_t d);

/// log2 d + H2(1/2 + 1/(2d^2)) - H_min(d).
double switched_cd_holevo_closed_form(std::size_t d);

/// quantum_switch(eb_xy, eb_xy, |+><+|) applied to a qubit state.
DensityMatrix switched_eb_effective(const DensityMatrix& rho);

/// (1/2) rho (x) |+><+| + (1/2) Z rho Z (x) |-><-|.
DensityMatrix switched_eb_closed_form(const DensityMatrix& rho);

struct Placement {
  std::string name;
  double ic_at_state = 0.0;
  double ic_max = 0.0;
  double chi_max = 0.0;
};

struct BottleneckReport {
  /// N, M, N o M (M first), M o N (N first), switch.
  std::vector<Placement> placements;
  bool ic_exceeds_sequential = false;
  bool chi_exceeds_sequential = false;
};

/// Compares single uses, both sequential orders and the switch (control
/// switch_control(p)). A value "exceeds" when it beats both sequential
/// orders by more than `margin`.
BottleneckReport bottleneck_comparison(const KrausChannel& n, const KrausChannel& m,
                                       const DensityMatrix& rho, double p = 0.5,
                                       const OptimizerOptions& opts = {}, double margin = 1e-6);

}  // namespace qcap

#endif  // QCAP_SWITCH_HPP
