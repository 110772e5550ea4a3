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

#include "qcap/channels.hpp"

#include <cmath>
#include <sstream>

namespace qcap {

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix m, const Tolerances& tol) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << "density matrix must be square and non-empty, got " << m.rows() << "x" << m.cols();
    throw Error(os.str());
  }
  if (!all_finite(m)) throw Error("density matrix has non-finite entries");
  const double defect = hermiticity_defect(m);
  if (defect > tol.hermiticity_tol) {
    std::ostringstream os;
    os << "density matrix is not Hermitian (max |rho - rho^dag| = " << defect << ")";
    throw Error(os.str());
  }
  m = hermitian_part(m);
  const double trace = m.trace().real();
  if (std::abs(trace - 1.0) > tol.psd_tol) {
    std::ostringstream os;
    os.precision(15);
    os << "density matrix trace is " << trace << ", expected 1";
    throw Error(os.str());
  }
  const double min_eig = eigvalsh(m, tol).minCoeff();
  if (min_eig < -tol.psd_tol) {
    std::ostringstream os;
    os << "density matrix is not positive semidefinite (min eigenvalue " << min_eig << ")";
    throw Error(os.str());
  }
  matrix_ = std::move(m);
}

DensityMatrix DensityMatrix::trusted(const ComplexMatrix& m) {
  return DensityMatrix(Trusted{}, hermitian_part(m));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double n = psi.squaredNorm();
  if (!(n > 0)) throw Error("pure state from a zero vector");
  return DensityMatrix(Trusted{}, hermitian_part(ComplexMatrix(psi * psi.adjoint() / n)));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t d) {
  if (d == 0) throw Error("maximally_mixed: dimension must be positive");
  return DensityMatrix(Trusted{}, identity(d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::maximally_entangled(std::size_t d) {
  ComplexVector phi = ComplexVector::Zero(d * d);
  for (std::size_t i = 0; i < d; ++i) phi(i * d + i) = 1.0;
  return pure(phi);
}

// ---------------------------------------------------------------------------
// KrausChannel

double completeness_residual(const std::vector<ComplexMatrix>& kraus, std::size_t dim_in,
                             std::size_t dim_out) {
  if (kraus.empty()) throw Error("Kraus set is empty");
  ComplexMatrix sum = ComplexMatrix::Zero(dim_in, dim_in);
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    const auto& a = kraus[i];
    if (static_cast<std::size_t>(a.rows()) != dim_out ||
        static_cast<std::size_t>(a.cols()) != dim_in) {
      std::ostringstream os;
      os << "Kraus operator " << i << " is " << a.rows() << "x" << a.cols() << ", expected "
         << dim_out << "x" << dim_in;
      throw Error(os.str());
    }
    if (!all_finite(a)) {
      std::ostringstream os;
      os << "Kraus operator " << i << " has non-finite entries";
      throw Error(os.str());
    }
    sum.noalias() += a.adjoint() * a;
  }
  return (sum - identity(dim_in)).norm();
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus, std::size_t dim_in,
                           std::size_t dim_out, std::string label, const Tolerances& tol)
    : dim_in_(dim_in), dim_out_(dim_out), label_(std::move(label)) {
  if (dim_in == 0 || dim_out == 0) throw Error("channel dimensions must be positive");
  residual_ = qcap::completeness_residual(kraus, dim_in, dim_out);
  if (!(residual_ <= tol.cptp_tol)) {
    std::ostringstream os;
    os << "Kraus operators violate completeness: ||sum A^dag A - I||_F = " << residual_
       << " exceeds " << tol.cptp_tol;
    throw Error(os.str());
  }
  kraus_ = std::move(kraus);
  const std::size_t k = kraus_.size();
  isometry_.resize(dim_out_ * k, dim_in_);
  for (std::size_t b = 0; b < dim_out_; ++b) {
    for (std::size_t i = 0; i < k; ++i) isometry_.row(b * k + i) = kraus_[i].row(b);
  }
}

KrausChannel KrausChannel::relabeled(std::string label) const {
  KrausChannel copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

KrausChannel validate_cptp(std::vector<ComplexMatrix> kraus, std::size_t dim_in,
                           std::size_t dim_out, std::string label, const Tolerances& tol) {
  return KrausChannel(std::move(kraus), dim_in, dim_out, std::move(label), tol);
}

// ---------------------------------------------------------------------------
// Action

namespace {

void require_input_dim(const KrausChannel& ch, Eigen::Index rows, Eigen::Index cols,
                       const char* what) {
  if (static_cast<std::size_t>(rows) != ch.dim_in() ||
      static_cast<std::size_t>(cols) != ch.dim_in()) {
    std::ostringstream os;
    os << what << ": input is " << rows << "x" << cols << " but channel '" << ch.label()
       << "' expects " << ch.dim_in() << "x" << ch.dim_in();
    throw Error(os.str());
  }
}

}  // namespace

ComplexMatrix apply(const KrausChannel& ch, const ComplexMatrix& x) {
  require_input_dim(ch, x.rows(), x.cols(), "apply");
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim_out(), ch.dim_out());
  for (const auto& a : ch.kraus()) out.noalias() += a * x * a.adjoint();
  return out;
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  return DensityMatrix::trusted(qcap::apply(ch, rho.matrix()));
}

ComplexMatrix apply_adjoint(const KrausChannel& ch, const ComplexMatrix& y) {
  if (static_cast<std::size_t>(y.rows()) != ch.dim_out() || y.rows() != y.cols()) {
    throw Error("apply_adjoint: operator does not match the channel output dimension");
  }
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim_in(), ch.dim_in());
  for (const auto& a : ch.kraus()) out.noalias() += a.adjoint() * y * a;
  return out;
}

ComplexMatrix apply_complementary(const KrausChannel& ch, const ComplexMatrix& x) {
  require_input_dim(ch, x.rows(), x.cols(), "apply_complementary");
  const auto k = static_cast<Eigen::Index>(ch.num_kraus());
  const ComplexMatrix& u = ch.isometry();
  const ComplexMatrix ux = u * x;
  ComplexMatrix env = ComplexMatrix::Zero(k, k);
  for (std::size_t b = 0; b < ch.dim_out(); ++b) {
    const auto rows = static_cast<Eigen::Index>(b) * k;
    env.noalias() += ux.middleRows(rows, k) * u.middleRows(rows, k).adjoint();
  }
  return env;
}

ComplexMatrix apply_complementary_adjoint(const KrausChannel& ch, const ComplexMatrix& y) {
  const auto k = static_cast<Eigen::Index>(ch.num_kraus());
  if (y.rows() != k || y.cols() != k) {
    throw Error("apply_complementary_adjoint: operator does not match the environment dimension");
  }
  const ComplexMatrix& u = ch.isometry();
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim_in(), ch.dim_in());
  for (std::size_t b = 0; b < ch.dim_out(); ++b) {
    const auto ub = u.middleRows(static_cast<Eigen::Index>(b) * k, k);
    out.noalias() += ub.adjoint() * y * ub;
  }
  return out;
}

DensityMatrix apply_with_reference(const KrausChannel& ch, const DensityMatrix& joint,
                                   std::size_t ref_dim) {
  if (ref_dim == 0 || joint.dim() != ch.dim_in() * ref_dim) {
    std::ostringstream os;
    os << "apply_with_reference: joint state has dimension " << joint.dim() << ", expected "
       << ch.dim_in() << " x " << ref_dim;
    throw Error(os.str());
  }
  const ComplexMatrix id_ref = identity(ref_dim);
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim_out() * ref_dim, ch.dim_out() * ref_dim);
  for (const auto& a : ch.kraus()) {
    const ComplexMatrix ak = kron(a, id_ref);
    out.noalias() += ak * joint.matrix() * ak.adjoint();
  }
  return DensityMatrix::trusted(out);
}

// ---------------------------------------------------------------------------
// Representations

ComplexMatrix choi_matrix(const KrausChannel& ch) {
  const std::size_t din = ch.dim_in();
  const std::size_t dout = ch.dim_out();
  ComplexMatrix vecs(dout * din, ch.num_kraus());
  for (std::size_t k = 0; k < ch.num_kraus(); ++k) {
    const auto& a = ch.kraus(k);
    for (std::size_t b = 0; b < dout; ++b) {
      for (std::size_t i = 0; i < din; ++i) vecs(b * din + i, k) = a(b, i);
    }
  }
  return vecs * vecs.adjoint() / static_cast<double>(din);
}

ChoiState choi(const KrausChannel& ch) {
  return ChoiState{ch.dim_in(), ch.dim_out(), DensityMatrix::trusted(choi_matrix(ch))};
}

KrausChannel kraus_from_choi(const ChoiState& c, const Tolerances& tol) {
  const std::size_t din = c.dim_in;
  const std::size_t dout = c.dim_out;
  if (c.state.dim() != din * dout) throw Error("kraus_from_choi: Choi dimension mismatch");
  const std::size_t dims[] = {dout, din};
  const std::size_t keep[] = {1};
  const ComplexMatrix marginal = partial_trace(c.state.matrix(), dims, keep);
  const double deviation = (marginal - identity(din) / static_cast<double>(din)).norm();
  if (deviation > 1e-9) {
    std::ostringstream os;
    os << "kraus_from_choi: reference marginal deviates from I/d by " << deviation;
    throw Error(os.str());
  }
  const auto eig = eigh(c.state.matrix(), tol);
  std::vector<ComplexMatrix> kraus;
  // Largest eigenvalues first.
  for (Eigen::Index e = eig.values.size(); e-- > 0;) {
    const double lambda = eig.values(e);
    if (lambda <= tol.eig_clip) continue;
    const double scale = std::sqrt(lambda * static_cast<double>(din));
    ComplexMatrix a(dout, din);
    for (std::size_t b = 0; b < dout; ++b) {
      for (std::size_t i = 0; i < din; ++i) a(b, i) = scale * eig.vectors(b * din + i, e);
    }
    kraus.push_back(std::move(a));
  }
  return KrausChannel(std::move(kraus), din, dout, "from_choi", tol);
}

KrausChannel minimal_kraus(const KrausChannel& ch, const Tolerances& tol) {
  return kraus_from_choi(choi(ch), tol).relabeled(ch.label());
}

ComplexMatrix isometric_extension(const KrausChannel& ch) { return ch.isometry(); }

KrausChannel complementary(const KrausChannel& ch) {
  const std::size_t k = ch.num_kraus();
  std::vector<ComplexMatrix> ops;
  ops.reserve(ch.dim_out());
  for (std::size_t b = 0; b < ch.dim_out(); ++b) {
    ComplexMatrix f(k, ch.dim_in());
    for (std::size_t i = 0; i < k; ++i) f.row(i) = ch.kraus(i).row(b);
    ops.push_back(std::move(f));
  }
  return KrausChannel(std::move(ops), ch.dim_in(), k, ch.label() + "^c");
}

KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner) {
  if (inner.dim_out() != outer.dim_in()) {
    std::ostringstream os;
    os << "compose: inner output dimension " << inner.dim_out()
       << " does not match outer input dimension " << outer.dim_in();
    throw Error(os.str());
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(outer.num_kraus() * inner.num_kraus());
  for (const auto& n : inner.kraus()) {
    for (const auto& m : outer.kraus()) ops.push_back(m * n);
  }
  return KrausChannel(std::move(ops), inner.dim_in(), outer.dim_out(),
                      outer.label() + "∘" + inner.label());
}

KrausChannel tensor(const KrausChannel& a, const KrausChannel& b) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(a.num_kraus() * b.num_kraus());
  for (const auto& x : a.kraus()) {
    for (const auto& y : b.kraus()) ops.push_back(kron(x, y));
  }
  return KrausChannel(std::move(ops), a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out(),
                      a.label() + "⊗" + b.label());
}

KrausChannel tensor_power(const KrausChannel& ch, std::size_t n) {
  if (n == 0) throw Error("tensor_power: n must be positive");
  KrausChannel out = ch;
  for (std::size_t i = 1; i < n; ++i) out = tensor(out, ch);
  return out;
}

KrausChannel unitary_channel(const ComplexMatrix& u, std::string label) {
  return KrausChannel({u}, static_cast<std::size_t>(u.cols()), static_cast<std::size_t>(u.rows()),
                      std::move(label));
}

KrausChannel identity_channel(std::size_t d) { return unitary_channel(identity(d), "id"); }

double action_distance(const KrausChannel& a, const KrausChannel& b) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    throw Error("action_distance: channels have different dimensions");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim_in(); ++i) {
    for (std::size_t j = 0; j < a.dim_in(); ++j) {
      const ComplexMatrix e = matrix_unit(a.dim_in(), i, j);
      worst = std::max(worst, (qcap::apply(a, e) - qcap::apply(b, e)).norm());
    }
  }
  return worst;
}

}  // namespace qcap
