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

#ifndef QCAP_NUMERICS_HPP
#define QCAP_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qcap {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Raised for every contract violation in the library (bad dimensions,
/// non-CPTP Kraus sets, invalid states, ...). The message is meant for humans.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numeric tolerances shared by every module.
struct Tolerances {
  double hermiticity_tol = 1e-10;
  double psd_tol = 1e-10;
  double cptp_tol = 1e-9;
  /// Eigenvalues with magnitude below this are treated as exact zeros
  /// inside entropies.
  double eig_clip = 1e-12;

  void check() const;
};

inline constexpr Tolerances kDefaultTolerances{};

// ---------------------------------------------------------------------------
// Kernel operations on arbitrary Eigen expressions.

/// Kronecker product a (x) b. Entry [(i*b.rows()+k), (j*b.cols()+l)] is
/// a(i,j) * b(k,l).
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Result = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Result out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Kronecker product of a list of factors, left to right.
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);

template <typename Derived>
auto dagger(const Eigen::MatrixBase<Derived>& m) {
  return m.adjoint().eval();
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> hermitian_part(
    const Eigen::MatrixBase<Derived>& m) {
  return (m + m.adjoint()) / 2.0;
}

/// max_ij |m - m^dag|_ij
template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Layout of a multipartite square operator: subsystem 0 is the most
/// significant tensor factor.
std::size_t product(std::span<const std::size_t> dims);

/// Reduced operator on the subsystems listed in `keep` (kept in increasing
/// subsystem order). Throws Error if prod(dims) != m.rows().
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// Transposes the listed subsystems, leaving the others untouched.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                std::span<const std::size_t> transpose);

/// Permutes tensor factors: output factor k is input factor perm[k].
ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                 std::span<const std::size_t> perm);

struct EigenDecomposition {
  RealVector values;  // ascending
  ComplexMatrix vectors;
};

/// Hermitian eigendecomposition. Inputs whose asymmetry is below
/// hermiticity_tol are symmetrized first; larger asymmetry is an Error that
/// reports the worst entry.
EigenDecomposition eigh(const ComplexMatrix& h, const Tolerances& tol = kDefaultTolerances);

/// Eigenvalues only; same contract as eigh.
RealVector eigvalsh(const ComplexMatrix& h, const Tolerances& tol = kDefaultTolerances);

/// V f(diag) V^dag for a Hermitian matrix.
template <typename F>
ComplexMatrix hermitian_function(const EigenDecomposition& eig, F&& f) {
  RealVector fv = eig.values.unaryExpr(f);
  return eig.vectors * fv.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix identity(std::size_t d);

/// |i><j| in dimension d.
ComplexMatrix matrix_unit(std::size_t d, std::size_t i, std::size_t j);

/// Computational basis ket |i> in dimension d.
ComplexVector ket(std::size_t d, std::size_t i);

/// Projector |v><v| (no normalization).
ComplexMatrix outer(const ComplexVector& v);

/// Pauli matrices.
ComplexMatrix pauli_i();
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

bool all_finite(const ComplexMatrix& m);

/// Raw eigenvalue-level entropy in bits of a Hermitian matrix. Values in
/// (-clip, clip] contribute nothing. No validation; callers own that.
double entropy_bits(const RealVector& eigenvalues, double clip);

}  // namespace qcap

#endif  // QCAP_NUMERICS_HPP
