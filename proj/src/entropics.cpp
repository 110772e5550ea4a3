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

#include "qcap/entropics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qcap/optimize.hpp"
#include "qcap/random.hpp"

namespace qcap {

double von_neumann_entropy(const ComplexMatrix& h, const Tolerances& tol) {
  const RealVector l = eigvalsh(h, tol);
  if (l.size() > 0 && l.minCoeff() < -tol.psd_tol) {
    std::ostringstream os;
    os << "von_neumann_entropy: negative eigenvalue " << l.minCoeff();
    throw Error(os.str());
  }
  return entropy_bits(l, tol.eig_clip);
}

double von_neumann_entropy(const DensityMatrix& rho, const Tolerances& tol) {
  return von_neumann_entropy(rho.matrix(), tol);
}

double shannon_entropy(std::span<const double> p) {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw Error("shannon_entropy: negative or NaN probability");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "shannon_entropy: probabilities sum to " << sum;
    throw Error(os.str());
  }
  double h = 0.0;
  for (double x : p) {
    if (x > 0) h -= x * std::log2(x);
  }
  return h;
}

double shannon_entropy(const RealVector& p) {
  return shannon_entropy(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
}

double binary_entropy(double x) {
  const double p[] = {x, 1.0 - x};
  return shannon_entropy(p);
}

void Ensemble::validate() const {
  if (probs.size() == 0 || static_cast<std::size_t>(probs.size()) != states.size()) {
    throw Error("ensemble: probabilities and states must have equal, nonzero length");
  }
  if (probs.minCoeff() < 0 || std::abs(probs.sum() - 1.0) > 1e-12) {
    throw Error("ensemble: probabilities are not on the simplex");
  }
  for (const auto& s : states) {
    if (s.dim() != states.front().dim()) throw Error("ensemble: states differ in dimension");
  }
}

DensityMatrix Ensemble::average() const {
  validate();
  ComplexMatrix avg = ComplexMatrix::Zero(states.front().dim(), states.front().dim());
  for (std::size_t x = 0; x < states.size(); ++x) avg += probs(x) * states[x].matrix();
  return DensityMatrix::trusted(avg);
}

double holevo_information(const Ensemble& ens, const KrausChannel& ch, const Tolerances& tol) {
  ens.validate();
  if (ens.states.front().dim() != ch.dim_in()) {
    std::ostringstream os;
    os << "holevo_information: ensemble states have dimension " << ens.states.front().dim()
       << ", channel expects " << ch.dim_in();
    throw Error(os.str());
  }
  double chi = von_neumann_entropy(qcap::apply(ch, ens.average().matrix()), tol);
  for (std::size_t x = 0; x < ens.states.size(); ++x) {
    if (ens.probs(x) == 0) continue;
    chi -= ens.probs(x) * von_neumann_entropy(qcap::apply(ch, ens.states[x].matrix()), tol);
  }
  return chi;
}

double coherent_information(const DensityMatrix& rho, const KrausChannel& ch,
                            const Tolerances& tol) {
  const double sb = von_neumann_entropy(qcap::apply(ch, rho.matrix()), tol);
  const double se = von_neumann_entropy(apply_complementary(ch, rho.matrix()), tol);
  return sb - se;
}

ComplexVector purify(const DensityMatrix& rho, const Tolerances& tol) {
  const std::size_t d = rho.dim();
  const auto eig = eigh(rho.matrix(), tol);
  ComplexVector phi = ComplexVector::Zero(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    const double l = std::max(0.0, eig.values(i));
    if (l == 0) continue;
    phi += std::sqrt(l) * kron(eig.vectors.col(i), ket(d, i));
  }
  return phi;
}

namespace {

DensityMatrix joint_output(const DensityMatrix& rho, const KrausChannel& ch,
                           const Tolerances& tol) {
  if (rho.dim() != ch.dim_in()) throw Error("input state does not match the channel input");
  const DensityMatrix phi = DensityMatrix::pure(purify(rho, tol));
  return apply_with_reference(ch, phi, rho.dim());
}

}  // namespace

double coherent_information_via_purification(const DensityMatrix& rho, const KrausChannel& ch,
                                             const Tolerances& tol) {
  const DensityMatrix joint = joint_output(rho, ch, tol);
  const std::size_t dims[] = {ch.dim_out(), rho.dim()};
  const std::size_t keep_b[] = {0};
  const double sb = von_neumann_entropy(partial_trace(joint.matrix(), dims, keep_b), tol);
  return sb - von_neumann_entropy(joint, tol);
}

double entropy_of_exchange(const DensityMatrix& rho, const KrausChannel& ch,
                           const Tolerances& tol) {
  return von_neumann_entropy(joint_output(rho, ch, tol), tol);
}

double quantum_mutual_information(const DensityMatrix& rho, const KrausChannel& ch,
                                  const Tolerances& tol) {
  return von_neumann_entropy(rho, tol) + von_neumann_entropy(qcap::apply(ch, rho.matrix()), tol) -
         entropy_of_exchange(rho, ch, tol);
}

namespace detail {

EntropyAndLog entropy_and_log(const ComplexMatrix& h, double clip, double floor) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(h));
  const RealVector& l = solver.eigenvalues();
  RealVector logs(l.size());
  for (Eigen::Index i = 0; i < l.size(); ++i) logs(i) = std::log2(std::max(l(i), floor));
  return {entropy_bits(l, clip),
          solver.eigenvectors() * logs.asDiagonal() * solver.eigenvectors().adjoint()};
}

}  // namespace detail

MinOutputEntropy min_output_entropy(const KrausChannel& ch, int restarts, std::uint64_t seed,
                                    int max_iters) {
  if (restarts < 1) throw Error("min_output_entropy: restarts must be >= 1");
  const std::size_t d = ch.dim_in();
  const double clip = kDefaultTolerances.eig_clip;

  // x packs an unnormalized column vector v; psi = v / |v|.
  const Objective objective = [&](const RealVector& x, RealVector& grad) {
    const ComplexMatrix v = unpack(x, d, 1);
    const double n2 = v.squaredNorm();
    const ComplexMatrix rho = v * v.adjoint() / n2;
    const auto out = detail::entropy_and_log(qcap::apply(ch, rho), clip);
    const ComplexMatrix a = -apply_adjoint(ch, out.log2);
    const Complex expect = (v.adjoint() * a * v)(0, 0) / n2;
    grad = pack(2.0 * (a * v - expect * v) / n2);
    return out.entropy;
  };

  LbfgsOptions opts;
  opts.max_iters = max_iters;
  opts.conv_tol = 1e-12;
  opts.step_init = 0.1;

  MinOutputEntropy best;
  best.value = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    const ComplexVector v0 = random_pure_state(d, rng);
    const auto res = minimize_lbfgs(objective, pack(ComplexMatrix(v0)), opts);
    ComplexVector psi = unpack(res.x, d, 1).col(0);
    psi /= psi.norm();
    // Re-evaluate at full precision.
    const double value = von_neumann_entropy(qcap::apply(ch, outer(psi)));
    if (value < best.value) {
      best.value = value;
      best.state = psi;
      best.converged = res.converged;
    }
  }
  return best;
}

}  // namespace qcap
