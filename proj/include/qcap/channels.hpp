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

#ifndef QCAP_CHANNELS_HPP
#define QCAP_CHANNELS_HPP

#include <string>
#include <vector>

#include "qcap/numerics.hpp"

namespace qcap {

/// Hermitian, positive-semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  /// Validates hermiticity, positivity and trace against `tol`.
  explicit DensityMatrix(ComplexMatrix m, const Tolerances& tol = kDefaultTolerances);

  /// Wraps a matrix already known to be a state (e.g. the output of a CPTP
  /// map on a state). Only symmetrizes; no spectral check.
  static DensityMatrix trusted(const ComplexMatrix& m);

  /// |psi><psi| / <psi|psi>.
  static DensityMatrix pure(const ComplexVector& psi);

  /// I/d.
  static DensityMatrix maximally_mixed(std::size_t d);

  /// (1/d) sum_ij |ii><jj|, system first, reference second.
  static DensityMatrix maximally_entangled(std::size_t d);

  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  struct Trusted {};
  DensityMatrix(Trusted, ComplexMatrix m) : matrix_(std::move(m)) {}

  ComplexMatrix matrix_;
};

/// CPTP map rho -> sum_i A_i rho A_i^dag. Immutable after construction.
class KrausChannel {
 public:
  /// Same as validate_cptp().
  KrausChannel(std::vector<ComplexMatrix> kraus, std::size_t dim_in, std::size_t dim_out,
               std::string label = {}, const Tolerances& tol = kDefaultTolerances);

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  /// Number of Kraus operators (= environment dimension of the Stinespring
  /// dilation built from this representation).
  std::size_t num_kraus() const { return kraus_.size(); }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  const ComplexMatrix& kraus(std::size_t i) const { return kraus_[i]; }
  const std::string& label() const { return label_; }
  /// || sum A^dag A - I ||_F measured at validation time.
  double completeness_residual() const { return residual_; }
  /// Stinespring isometry sum_i A_i (x) |i>, rows indexed (output, env).
  const ComplexMatrix& isometry() const { return isometry_; }

  KrausChannel relabeled(std::string label) const;

 private:
  std::vector<ComplexMatrix> kraus_;
  std::size_t dim_in_;
  std::size_t dim_out_;
  std::string label_;
  double residual_;
  ComplexMatrix isometry_;
};

/// Choi state (N (x) I)(Phi), output factor first, reference second.
struct ChoiState {
  std::size_t dim_in;
  std::size_t dim_out;
  DensityMatrix state;
};

/// || sum_i A_i^dag A_i - I ||_F. Throws on shape mismatch (naming the
/// offending operator index).
double completeness_residual(const std::vector<ComplexMatrix>& kraus, std::size_t dim_in,
                             std::size_t dim_out);

/// Checks shapes and completeness; throws Error with the residual otherwise.
KrausChannel validate_cptp(std::vector<ComplexMatrix> kraus, std::size_t dim_in,
                           std::size_t dim_out, std::string label = {},
                           const Tolerances& tol = kDefaultTolerances);

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

/// Linear extension of the channel to arbitrary dim_in x dim_in operators.
ComplexMatrix apply(const KrausChannel& ch, const ComplexMatrix& x);

/// Heisenberg picture: sum_i A_i^dag y A_i.
ComplexMatrix apply_adjoint(const KrausChannel& ch, const ComplexMatrix& y);

/// Environment output Tr_B(U x U^dag); entries Tr(A_k x A_m^dag).
ComplexMatrix apply_complementary(const KrausChannel& ch, const ComplexMatrix& x);

/// Adjoint of apply_complementary: sum_km y_km A_k^dag A_m.
ComplexMatrix apply_complementary_adjoint(const KrausChannel& ch, const ComplexMatrix& y);

/// (N (x) I_ref)(joint); the channel acts on the first tensor factor.
DensityMatrix apply_with_reference(const KrausChannel& ch, const DensityMatrix& joint,
                                   std::size_t ref_dim);

ChoiState choi(const KrausChannel& ch);

/// Raw Choi matrix (1/d) sum_k vec(A_k) vec(A_k)^dag (row-major vec).
ComplexMatrix choi_matrix(const KrausChannel& ch);

/// Canonical minimal Kraus set from the Choi eigendecomposition.
KrausChannel kraus_from_choi(const ChoiState& c, const Tolerances& tol = kDefaultTolerances);

/// Same action, minimal number of Kraus operators.
KrausChannel minimal_kraus(const KrausChannel& ch, const Tolerances& tol = kDefaultTolerances);

/// U = sum_i A_i (x) |i>, shape (dim_out * k) x dim_in.
ComplexMatrix isometric_extension(const KrausChannel& ch);

/// Channel to the environment, output dimension = number of Kraus operators.
KrausChannel complementary(const KrausChannel& ch);

/// outer o inner: apply `inner` first. Kraus set {M_j N_i}.
KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner);

/// a (x) b with Kraus set {A_i (x) B_j}.
KrausChannel tensor(const KrausChannel& a, const KrausChannel& b);

/// ch^{(x) n}.
KrausChannel tensor_power(const KrausChannel& ch, std::size_t n);

/// Unitary conjugation rho -> U rho U^dag.
KrausChannel unitary_channel(const ComplexMatrix& u, std::string label = {});

KrausChannel identity_channel(std::size_t d);

/// Max over a basis of matrix units of the Frobenius distance between the
/// actions of two channels with equal dimensions.
double action_distance(const KrausChannel& a, const KrausChannel& b);

}  // namespace qcap

#endif  // QCAP_CHANNELS_HPP
