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

#include "qcap/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qcap {

void Tolerances::check() const {
  if (!(hermiticity_tol > 0 && psd_tol > 0 && cptp_tol > 0 && eig_clip > 0)) {
    throw Error("tolerances must be strictly positive");
  }
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

namespace {

void check_factorization(const ComplexMatrix& m, std::span<const std::size_t> dims,
                         const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": matrix is " << m.rows() << "x" << m.cols() << ", expected square";
    throw Error(os.str());
  }
  for (auto d : dims) {
    if (d == 0) throw Error(std::string(what) + ": subsystem dimension 0");
  }
  const std::size_t expected = product(dims);
  if (expected != static_cast<std::size_t>(m.rows())) {
    std::ostringstream os;
    os << what << ": subsystem dimensions multiply to " << expected << " but matrix has "
       << m.rows() << " rows";
    throw Error(os.str());
  }
}

// Mixed-radix digits of a flat index, subsystem 0 most significant.
void to_digits(std::size_t index, std::span<const std::size_t> dims, std::vector<std::size_t>& out) {
  out.resize(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    out[k] = index % dims[k];
    index /= dims[k];
  }
}

std::size_t from_digits(std::span<const std::size_t> digits, std::span<const std::size_t> dims) {
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
  return index;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  check_factorization(m, dims, "partial_trace");
  const std::size_t n = dims.size();
  std::vector<bool> kept(n, false);
  for (auto k : keep) {
    if (k >= n) {
      std::ostringstream os;
      os << "partial_trace: subsystem index " << k << " out of range for " << n << " subsystems";
      throw Error(os.str());
    }
    kept[k] = true;
  }
  std::vector<std::size_t> kept_dims, traced_dims, kept_idx, traced_idx;
  for (std::size_t k = 0; k < n; ++k) {
    if (kept[k]) {
      kept_dims.push_back(dims[k]);
      kept_idx.push_back(k);
    } else {
      traced_dims.push_back(dims[k]);
      traced_idx.push_back(k);
    }
  }
  const std::size_t dk = product(kept_dims);
  const std::size_t dt = product(traced_dims);

  // Flat offsets of kept / traced digits inside the full index.
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t k = n - 1; k-- > 0;) stride[k] = stride[k + 1] * dims[k + 1];

  std::vector<std::size_t> kept_offset(dk), traced_offset(dt), digits;
  for (std::size_t a = 0; a < dk; ++a) {
    to_digits(a, kept_dims, digits);
    std::size_t off = 0;
    for (std::size_t k = 0; k < kept_idx.size(); ++k) off += digits[k] * stride[kept_idx[k]];
    kept_offset[a] = off;
  }
  for (std::size_t t = 0; t < dt; ++t) {
    to_digits(t, traced_dims, digits);
    std::size_t off = 0;
    for (std::size_t k = 0; k < traced_idx.size(); ++k) off += digits[k] * stride[traced_idx[k]];
    traced_offset[t] = off;
  }

  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (std::size_t a = 0; a < dk; ++a) {
    for (std::size_t b = 0; b < dk; ++b) {
      Complex acc = 0;
      for (std::size_t t = 0; t < dt; ++t) {
        acc += m(kept_offset[a] + traced_offset[t], kept_offset[b] + traced_offset[t]);
      }
      out(a, b) = acc;
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                std::span<const std::size_t> transpose) {
  check_factorization(m, dims, "partial_transpose");
  std::vector<bool> flip(dims.size(), false);
  for (auto k : transpose) {
    if (k >= dims.size()) throw Error("partial_transpose: subsystem index out of range");
    flip[k] = true;
  }
  const auto d = static_cast<std::size_t>(m.rows());
  ComplexMatrix out(d, d);
  std::vector<std::size_t> ri, ci;
  for (std::size_t r = 0; r < d; ++r) {
    to_digits(r, dims, ri);
    for (std::size_t c = 0; c < d; ++c) {
      to_digits(c, dims, ci);
      auto rr = ri;
      auto cc = ci;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (flip[k]) std::swap(rr[k], cc[k]);
      }
      out(from_digits(rr, dims), from_digits(cc, dims)) = m(r, c);
    }
  }
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                 std::span<const std::size_t> perm) {
  check_factorization(m, dims, "permute_subsystems");
  if (perm.size() != dims.size()) throw Error("permute_subsystems: permutation length mismatch");
  std::vector<std::size_t> new_dims(dims.size());
  for (std::size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims[perm[k]];
  const auto d = static_cast<std::size_t>(m.rows());
  // Map every old flat index to its new flat index.
  std::vector<std::size_t> remap(d), digits, nd(dims.size());
  for (std::size_t i = 0; i < d; ++i) {
    to_digits(i, dims, digits);
    for (std::size_t k = 0; k < perm.size(); ++k) nd[k] = digits[perm[k]];
    remap[i] = from_digits(nd, new_dims);
  }
  ComplexMatrix out(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) out(remap[r], remap[c]) = m(r, c);
  }
  return out;
}

namespace {

ComplexMatrix checked_hermitian(const ComplexMatrix& h, const Tolerances& tol) {
  if (h.rows() != h.cols()) {
    std::ostringstream os;
    os << "eigh: matrix is " << h.rows() << "x" << h.cols() << ", expected square";
    throw Error(os.str());
  }
  const double defect = h.size() == 0 ? 0.0 : hermiticity_defect(h);
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (!(defect <= tol.hermiticity_tol * scale)) {
    std::ostringstream os;
    os << "eigh: matrix is not Hermitian, max |h - h^dag| entry = " << defect;
    throw Error(os.str());
  }
  return hermitian_part(h);
}

}  // namespace

EigenDecomposition eigh(const ComplexMatrix& h, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(checked_hermitian(h, tol));
  if (solver.info() != Eigen::Success) throw Error("eigh: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector eigvalsh(const ComplexMatrix& h, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(checked_hermitian(h, tol),
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigvalsh: eigensolver did not converge");
  return solver.eigenvalues();
}

ComplexMatrix identity(std::size_t d) { return ComplexMatrix::Identity(d, d); }

ComplexMatrix matrix_unit(std::size_t d, std::size_t i, std::size_t j) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

ComplexVector ket(std::size_t d, std::size_t i) {
  ComplexVector v = ComplexVector::Zero(d);
  v(i) = 1.0;
  return v;
}

ComplexMatrix outer(const ComplexVector& v) { return v * v.adjoint(); }

ComplexMatrix pauli_i() { return identity(2); }

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  const Complex i(0, 1);
  ComplexMatrix m(2, 2);
  m << 0, -i, i, 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

bool all_finite(const ComplexMatrix& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

double entropy_bits(const RealVector& eigenvalues, double clip) {
  double s = 0.0;
  for (double l : eigenvalues) {
    if (l > clip) s -= l * std::log2(l);
  }
  return s;
}

}  // namespace qcap
