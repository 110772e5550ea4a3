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

#ifndef QCAP_ZOO_HPP
#define QCAP_ZOO_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcap/channels.hpp"

namespace qcap {

// ---------------------------------------------------------------------------
// Named channels

/// (1-q) rho + (q/3)(X rho X + Y rho Y + Z rho Z), q in [0, 1].
KrausChannel depolarizing(double q);

/// The d^2 clock-and-shift unitaries X^a Z^b, ordered a-major.
std::vector<ComplexMatrix> weyl_heisenberg(std::size_t d);

/// rho -> Tr(rho) I/d with Kraus {U_i / d} over the Weyl-Heisenberg group.
KrausChannel completely_depolarizing(std::size_t d);

/// Kraus {sqrt(pI) I, sqrt(pX) X, sqrt(pY) Y, sqrt(pZ) Z}.
KrausChannel pauli_channel(double p_i, double p_x, double p_y, double p_z);

/// Two-qubit input, five-level output: rho/2 on the first four levels plus
/// an erasure flag |4><4| with weight 1/2.
KrausChannel erasure_50_two_qubit();

/// Relative sign between the two shield operators of the Horodecki channel.
enum class ShieldSign {
  /// M1 = diag(sin pi/8, -cos pi/8). PPT at q = 2 - sqrt(2).
  kOpposite,
  /// M1 = diag(sin pi/8, cos pi/8). Never PPT; kept for comparison.
  kSame,
};

/// The unique q at which horodecki_4d(q, kOpposite) is PPT.
inline const double kHorodeckiPptQ = 2.0 - std::sqrt(2.0);

/// Four-dimensional (key qubit (x) shield qubit) PPT channel with six Kraus
/// operators, q in (0, 1).
KrausChannel horodecki_4d(double q = kHorodeckiPptQ, ShieldSign sign = ShieldSign::kOpposite);

/// rho -> (X rho X + Y rho Y) / 2.
KrausChannel eb_xy();

/// p a(rho) (x) |0><0| + (1-p) b(rho) (x) |1><1|. Outputs of a and b are
/// embedded into a common space of dimension max(a.dim_out, b.dim_out);
/// the flag is the last tensor factor.
KrausChannel flagged_mix(double p, const KrausChannel& a, const KrausChannel& b);

/// rho -> sum p_i U_i^dag rho U_i and its complex conjugate, with Haar U_i
/// and p uniform on the simplex.
std::pair<KrausChannel, KrausChannel> random_conjugate_pair(std::size_t d, std::size_t k,
                                                            std::uint64_t seed);

/// Random channel from a Haar isometry C^d_in -> C^(d_out * k).
KrausChannel random_channel(std::size_t dim_in, std::size_t dim_out, std::size_t k,
                            std::uint64_t seed);

// ---------------------------------------------------------------------------
// Structural classifiers

struct PptResult {
  bool ppt = false;
  double min_eigenvalue = 0.0;
};

/// Partial transpose of the Choi state on the reference factor.
PptResult is_ppt(const KrausChannel& ch, const Tolerances& tol = kDefaultTolerances);

enum class Degradability { kDegradable, kAntidegradable, kUndetermined };

std::string_view to_string(Degradability d);

struct DegradabilityReport {
  /// Antidegradable wins when both hold (a symmetric channel).
  Degradability verdict = Degradability::kUndetermined;
  bool degradable = false;
  bool antidegradable = false;
  /// || Omega o N - N^c || for the best degrading map found (NaN if skipped).
  double degrading_residual = NAN;
  /// || Omega' o N^c - N || for the best antidegrading map found.
  double antidegrading_residual = NAN;
};

/// Heuristic: least squares for a post-processing map at the Choi level,
/// accepted when it is CPTP; otherwise refined by a PSD-parametrized fit.
/// Never a proof; "undetermined" is a legal answer.
DegradabilityReport degradability_witness(const KrausChannel& ch,
                                          const Tolerances& tol = kDefaultTolerances);

struct ChannelClassReport {
  PptResult ppt;
  /// PPT and the PPT => separable shortcut applies, so the channel is
  /// entanglement breaking.
  bool entanglement_breaking_hint = false;
  /// dim_in * dim_out <= 6 (2x2 or 2x3 Choi state).
  bool separability_shortcut_applicable = false;
  DegradabilityReport degradability;
};

ChannelClassReport classify(const KrausChannel& ch, const Tolerances& tol = kDefaultTolerances);

// ---------------------------------------------------------------------------
// Addressing channels by name, e.g. "dep:q=0.19", "horodecki:q=0.5",
// "erasure50", "ebxy", "cd:d=3", "pauli:px=0.1,py=0,pz=0.2", "id:d=2".

KrausChannel channel_from_spec(std::string_view spec);

struct ZooEntry {
  std::string name;
  std::string parameters;
  std::string description;
};

std::vector<ZooEntry> zoo_catalog();

}  // namespace qcap

#endif  // QCAP_ZOO_HPP
