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

#ifndef QCAP_ENTROPICS_HPP
#define QCAP_ENTROPICS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "qcap/channels.hpp"

namespace qcap {

// All entropies are in bits.

/// -sum lambda log2 lambda. Eigenvalues in (-eig_clip, eig_clip] count as
/// zero; anything below -psd_tol throws.
double von_neumann_entropy(const DensityMatrix& rho, const Tolerances& tol = kDefaultTolerances);

/// Same contract for a raw Hermitian matrix (trace not checked).
double von_neumann_entropy(const ComplexMatrix& h, const Tolerances& tol = kDefaultTolerances);

/// Shannon entropy with 0 log 0 = 0. Requires a probability vector
/// (nonnegative, sums to 1 within 1e-12).
double shannon_entropy(std::span<const double> p);
double shannon_entropy(const RealVector& p);

/// H2(x) = -x log2 x - (1-x) log2 (1-x).
double binary_entropy(double x);

/// Probability vector paired with equally sized states.
struct Ensemble {
  RealVector probs;
  std::vector<DensityMatrix> states;

  /// Throws unless probs is on the simplex, sizes agree, and all states
  /// share one dimension.
  void validate() const;
  DensityMatrix average() const;
};

/// S(N(sum p rho)) - sum p S(N(rho)).
double holevo_information(const Ensemble& ens, const KrausChannel& ch,
                          const Tolerances& tol = kDefaultTolerances);

/// I_c = S(N(rho)) - S(N^c(rho)).
double coherent_information(const DensityMatrix& rho, const KrausChannel& ch,
                            const Tolerances& tol = kDefaultTolerances);

/// Independent route: S(B) - S(BR) on (N (x) I)(|phi><phi|) for a purification
/// |phi> of rho.
double coherent_information_via_purification(const DensityMatrix& rho, const KrausChannel& ch,
                                             const Tolerances& tol = kDefaultTolerances);

/// |phi> = sum_i sqrt(lambda_i) |v_i>|i>, system first, reference second
/// (reference dimension = rho.dim()).
ComplexVector purify(const DensityMatrix& rho, const Tolerances& tol = kDefaultTolerances);

/// S((N (x) I)(phi)) for a purification phi of rho.
double entropy_of_exchange(const DensityMatrix& rho, const KrausChannel& ch,
                           const Tolerances& tol = kDefaultTolerances);

/// S(A) + S(B) - S(E).
double quantum_mutual_information(const DensityMatrix& rho, const KrausChannel& ch,
                                  const Tolerances& tol = kDefaultTolerances);

struct MinOutputEntropy {
  double value = 0.0;
  ComplexVector state;  // achieving pure input
  bool converged = false;
};

/// Upper estimate of min_rho S(N(rho)) over pure inputs, multi-restart
/// L-BFGS from Haar-random starts.
MinOutputEntropy min_output_entropy(const KrausChannel& ch, int restarts, std::uint64_t seed = 1,
                                    int max_iters = 2000);

namespace detail {

/// Entropy of a Hermitian matrix together with log2 of it, eigenvalues
/// floored at `floor` inside the logarithm. Used for gradients.
struct EntropyAndLog {
  double entropy;
  ComplexMatrix log2;
};
EntropyAndLog entropy_and_log(const ComplexMatrix& h, double clip, double floor = 1e-15);

}  // namespace detail

}  // namespace qcap

#endif  // QCAP_ENTROPICS_HPP
