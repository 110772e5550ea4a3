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

#include "qcap/capacity.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qcap/optimize.hpp"
#include "qcap/random.hpp"

namespace qcap {

void OptimizerOptions::check() const {
  if (restarts < 1) throw Error("optimizer: restarts must be >= 1");
  if (max_iters < 1) throw Error("optimizer: max_iters must be >= 1");
  if (!(conv_tol > 0)) throw Error("optimizer: conv_tol must be positive");
  if (!(step_init > 0)) throw Error("optimizer: step_init must be positive");
}

namespace {

LbfgsOptions lbfgs_options(const OptimizerOptions& opts) {
  LbfgsOptions o;
  o.max_iters = opts.max_iters;
  o.conv_tol = opts.conv_tol;
  o.step_init = opts.step_init;
  return o;
}

// Square-root factor of a state, perturbed so that it has full rank.
ComplexMatrix factor_near(const DensityMatrix& rho, Rng& rng, double noise) {
  const auto eig = eigh(rho.matrix());
  const ComplexMatrix root =
      hermitian_function(eig, [](double x) { return std::sqrt(std::max(x, 0.0)); });
  return root + noise * ginibre(rho.dim(), rho.dim(), rng);
}

DensityMatrix state_from_factor(const ComplexMatrix& l) {
  const ComplexMatrix p = l * l.adjoint();
  return DensityMatrix::trusted(p / p.trace().real());
}

}  // namespace

namespace detail {

RealVector softmax(const RealVector& logits) {
  RealVector a = logits.array() - logits.maxCoeff();
  a = a.array().exp();
  return a / a.sum();
}

Objective negative_coherent_information(const KrausChannel& ch) {
  const std::size_t d = ch.dim_in();
  return [d, ch, env = complementary(ch)](const RealVector& x, RealVector& grad) {
    const double clip = kDefaultTolerances.eig_clip;
    const ComplexMatrix l = unpack(x, d, d);
    const double t = l.squaredNorm();
    const ComplexMatrix rho = l * l.adjoint() / t;
    const auto b = entropy_and_log(qcap::apply(ch, rho), clip);
    const auto e = entropy_and_log(qcap::apply(env, rho), clip);
    // dI_c/drho = N^dag(-log2 N(rho)) - N^c^dag(-log2 N^c(rho)).
    ComplexMatrix g = apply_adjoint(env, e.log2) - apply_adjoint(ch, b.log2);
    const Complex mean = (g * rho).trace();
    g.diagonal().array() -= mean;
    grad = pack(-2.0 * g * l / t);
    return -(b.entropy - e.entropy);
  };
}

Objective negative_holevo(const KrausChannel& ch, std::size_t m) {
  const std::size_t d = ch.dim_in();
  return [d, m, ch](const RealVector& x, RealVector& grad) {
    const double clip = kDefaultTolerances.eig_clip;
    const auto mi = static_cast<Eigen::Index>(m);
    const RealVector p = softmax(x.head(mi));
    const ComplexMatrix v = unpack(x, d, m, m);
    std::vector<ComplexMatrix> outs(m);
    std::vector<double> norms(m);
    ComplexMatrix avg = ComplexMatrix::Zero(ch.dim_out(), ch.dim_out());
    for (std::size_t k = 0; k < m; ++k) {
      norms[k] = v.col(k).squaredNorm();
      outs[k] = qcap::apply(ch, ComplexMatrix(v.col(k) * v.col(k).adjoint() / norms[k]));
      avg += p(k) * outs[k];
    }
    const auto bar = entropy_and_log(avg, clip);
    const ComplexMatrix a_bar = -apply_adjoint(ch, bar.log2);
    double chi = bar.entropy;
    RealVector g(mi);
    ComplexMatrix gv(d, m);
    for (std::size_t k = 0; k < m; ++k) {
      const auto own = entropy_and_log(outs[k], clip);
      chi -= p(k) * own.entropy;
      // dchi/dp_k up to a constant that the softmax Jacobian removes.
      g(k) = -(outs[k] * bar.log2).trace().real() - own.entropy;
      const ComplexMatrix a = p(k) * (a_bar + apply_adjoint(ch, own.log2));
      const ComplexVector col = v.col(k);
      const Complex mean = col.dot(a * col) / norms[k];
      gv.col(k) = 2.0 * (a * col - mean * col) / norms[k];
    }
    const double gbar = p.dot(g);
    grad.resize(x.size());
    grad.head(mi) = -(p.array() * (g.array() - gbar)).matrix();
    grad.tail(x.size() - mi) = -pack(gv);
    return -chi;
  };
}

}  // namespace detail

CapacityEstimate maximize_coherent_information(const KrausChannel& ch,
                                               const OptimizerOptions& opts,
                                               std::span<const DensityMatrix> initial_states) {
  opts.check();
  const std::size_t d = ch.dim_in();
  for (const auto& s : initial_states) {
    if (s.dim() != d) throw Error("maximize_coherent_information: initial state dimension mismatch");
  }
  const Objective objective = detail::negative_coherent_information(ch);

  CapacityEstimate best;
  best.value = -std::numeric_limits<double>::infinity();
  const LbfgsOptions lo = lbfgs_options(opts);
  const int structured = static_cast<int>(initial_states.size());
  const int total = structured + opts.restarts;
  for (int r = 0; r < total; ++r) {
    ComplexMatrix l0;
    if (r < structured) {
      Rng rng(derive_seed(opts.seed ^ 0x9e3779b97f4a7c15ULL, static_cast<std::uint64_t>(r)));
      l0 = factor_near(initial_states[static_cast<std::size_t>(r)], rng, 1e-3);
    } else {
      Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(r - structured)));
      l0 = ginibre(d, d, rng);
    }
    const auto res = minimize_lbfgs(objective, pack(l0), lo);
    DensityMatrix rho = state_from_factor(unpack(res.x, d, d));
    const double value = coherent_information(rho, ch);
    if (value > best.value) {
      best.value = value;
      best.argmax_state = std::move(rho);
      best.converged = res.converged;
    }
  }
  best.restarts_used = total;
  return best;
}

CapacityEstimate maximize_holevo(const KrausChannel& ch, int m, const OptimizerOptions& opts) {
  opts.check();
  const std::size_t d = ch.dim_in();
  if (m == 0) m = static_cast<int>(d * d);
  if (m < 2) throw Error("maximize_holevo: ensemble size must be >= 2");
  const auto mm = static_cast<std::size_t>(m);
  const Objective objective = detail::negative_holevo(ch, mm);

  CapacityEstimate best;
  best.value = -std::numeric_limits<double>::infinity();
  const LbfgsOptions lo = lbfgs_options(opts);
  for (int r = 0; r < opts.restarts; ++r) {
    Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(r)));
    RealVector x0(static_cast<Eigen::Index>(mm + 2 * d * mm));
    x0.head(static_cast<Eigen::Index>(mm)).setZero();
    x0.tail(static_cast<Eigen::Index>(2 * d * mm)) = pack(ginibre(d, mm, rng));
    const auto res = minimize_lbfgs(objective, x0, lo);

    Ensemble ens;
    ens.probs = detail::softmax(res.x.head(static_cast<Eigen::Index>(mm)));
    const ComplexMatrix v = unpack(res.x, d, mm, mm);
    for (std::size_t k = 0; k < mm; ++k) ens.states.push_back(DensityMatrix::pure(v.col(k)));
    const double value = holevo_information(ens, ch);
    if (value > best.value) {
      best.value = value;
      best.argmax_ensemble = std::move(ens);
      best.converged = res.converged;
    }
  }
  best.restarts_used = opts.restarts;
  return best;
}

namespace {

double depolarizing_ic_raw(double q) {
  const double p[] = {1 - q, q / 3, q / 3, q / 3};
  return 1.0 - shannon_entropy(p);
}

}  // namespace

double depolarizing_ic_closed_form(double q) {
  if (!(q >= 0 && q <= 1)) throw Error("depolarizing_ic_closed_form: q outside [0, 1]");
  return std::max(0.0, depolarizing_ic_raw(q));
}

double depolarizing_threshold(double tol) {
  double lo = 0.1, hi = 0.25;  // raw value is positive at lo and negative at hi
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (depolarizing_ic_raw(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Repetition code

void SyndromeTable::validate(double tol) const {
  double total = 0.0;
  for (std::size_t s = 0; s < 4; ++s) {
    total += prob[s];
    if (prob[s] == 0) continue;
    double sum = 0.0;
    for (double r : residual[s]) {
      if (r < -tol) throw Error("syndrome table: negative residual probability");
      sum += r;
    }
    if (std::abs(sum - 1.0) > tol) throw Error("syndrome table: residual vector off the simplex");
  }
  if (std::abs(total - 1.0) > tol) throw Error("syndrome table: syndrome probabilities do not sum to 1");
}

DecodedPattern repetition_decode(int a, int b, int c) {
  // Pauli k in (I, X, Y, Z) has bits x = (k == 1 || k == 2), z = (k >= 2).
  const auto xbit = [](int k) { return (k == 1 || k == 2) ? 1 : 0; };
  const auto zbit = [](int k) { return k >= 2 ? 1 : 0; };
  // CNOT 3->1 and 3->2 copy X on qubit 3 onto qubits 1, 2 and copy Z on
  // qubits 1, 2 back onto qubit 3.
  const int s1 = xbit(a) ^ xbit(c);
  const int s2 = xbit(b) ^ xbit(c);
  const int x = xbit(c) ^ (s1 & s2);
  const int z = zbit(a) ^ zbit(b) ^ zbit(c);
  return {2 * s1 + s2, x ? (z ? 2 : 1) : (z ? 3 : 0)};
}

SyndromeTable repetition_syndrome_table(double q) {
  if (!(q >= 0 && q <= 1)) throw Error("repetition_syndrome_table: q outside [0, 1]");
  const double pk[] = {1 - q, q / 3, q / 3, q / 3};
  SyndromeTable t;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        const double w = pk[a] * pk[b] * pk[c];
        const auto [s, residual] = repetition_decode(a, b, c);
        t.prob[static_cast<std::size_t>(s)] += w;
        t.residual[static_cast<std::size_t>(s)][static_cast<std::size_t>(residual)] += w;
      }
    }
  }
  for (std::size_t s = 0; s < 4; ++s) {
    if (t.prob[s] > 0) {
      for (double& r : t.residual[s]) r /= t.prob[s];
    }
  }
  return t;
}

RepetitionValue repetition_coherent_information(double q) {
  const SyndromeTable t = repetition_syndrome_table(q);
  RepetitionValue v;
  for (std::size_t s = 0; s < 4; ++s) {
    if (t.prob[s] == 0) continue;
    v.total += t.prob[s] * (1.0 - shannon_entropy(t.residual[s]));
  }
  v.rate = v.total / 3.0;
  return v;
}

namespace {

// CNOT on n qubits, qubit 0 most significant.
ComplexMatrix cnot(std::size_t n, std::size_t control, std::size_t target) {
  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const bool c = (i >> (n - 1 - control)) & 1;
    const std::size_t j = c ? i ^ (std::size_t{1} << (n - 1 - target)) : i;
    u(j, i) = 1.0;
  }
  return u;
}

}  // namespace

double repetition_brute_force_oracle(double q) {
  // Qubits: 0, 1, 2 = code qubits 1, 2, 3; 3 = reference.
  ComplexVector phi = ComplexVector::Zero(16);
  phi(0) = phi(15) = std::sqrt(0.5);
  ComplexMatrix rho = outer(phi);

  const KrausChannel noise = tensor(tensor_power(depolarizing(q), 3), identity_channel(2));
  rho = qcap::apply(noise, rho);

  const ComplexMatrix decoder = cnot(4, 2, 1) * cnot(4, 2, 0);
  rho = decoder * rho * decoder.adjoint();

  const ComplexMatrix x3 = kron_all(std::vector<ComplexMatrix>{
      pauli_i(), pauli_i(), pauli_x(), pauli_i()});
  const std::size_t dims[] = {2, 2, 2, 2};
  const std::size_t keep_b[] = {2};
  const std::size_t keep_br[] = {2, 3};
  double total = 0.0;
  for (std::size_t s1 = 0; s1 < 2; ++s1) {
    for (std::size_t s2 = 0; s2 < 2; ++s2) {
      const ComplexMatrix proj = kron_all(std::vector<ComplexMatrix>{
          matrix_unit(2, s1, s1), matrix_unit(2, s2, s2), identity(2), identity(2)});
      ComplexMatrix branch = proj * rho * proj;
      const double p = branch.trace().real();
      if (p <= 0) continue;
      branch /= p;
      if (s1 == 1 && s2 == 1) branch = x3 * branch * x3;
      const double sb = von_neumann_entropy(partial_trace(branch, dims, keep_b));
      const double sbr = von_neumann_entropy(partial_trace(branch, dims, keep_br));
      total += p * (sb - sbr);
    }
  }
  return total;
}

// ---------------------------------------------------------------------------

CapacityEstimate multi_copy_ic(const KrausChannel& ch, int n, const OptimizerOptions& opts) {
  if (n < 1) throw Error("multi_copy_ic: n must be >= 1");
  std::size_t dim = 1;
  for (int i = 0; i < n; ++i) {
    dim *= ch.dim_in();
    if (dim > kMaxMultiCopyDim) {
      std::ostringstream os;
      os << "multi_copy_ic: input dimension " << ch.dim_in() << "^" << n << " exceeds "
         << kMaxMultiCopyDim;
      throw Error(os.str());
    }
  }
  CapacityEstimate est =
      maximize_coherent_information(tensor_power(ch, static_cast<std::size_t>(n)), opts);
  est.value /= n;
  return est;
}

std::vector<DensityMatrix> superactivation_initial_states() {
  // Factor order: Horodecki key, Horodecki shield, erasure qubit 1, erasure qubit 2.
  std::vector<DensityMatrix> states;
  states.push_back(DensityMatrix::maximally_entangled(4));
  // Key <-> erasure qubit 2 and shield <-> erasure qubit 1.
  ComplexVector crossed = ComplexVector::Zero(16);
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t s = 0; s < 2; ++s) crossed(k * 8 + s * 4 + s * 2 + k) = 0.5;
  }
  states.push_back(DensityMatrix::pure(crossed));
  // Key entangled with erasure qubit 1, both shields maximally mixed.
  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = std::sqrt(0.5);
  const ComplexMatrix key_e1 = outer(bell);
  const ComplexMatrix mixed = identity(2) / 2.0;
  const std::size_t dims[] = {2, 2, 2, 2};
  const std::size_t perm[] = {0, 2, 1, 3};  // (key, e1, shield, e2) -> (key, shield, e1, e2)
  states.push_back(DensityMatrix::trusted(
      permute_subsystems(kron(kron(key_e1, mixed), mixed), dims, perm)));
  states.push_back(DensityMatrix::maximally_mixed(16));
  return states;
}

SuperactivationReport superactivation_search(std::span<const double> q_grid,
                                             const OptimizerOptions& opts) {
  if (q_grid.empty()) throw Error("superactivation_search: empty q grid");
  SuperactivationReport report;
  const KrausChannel erasure = erasure_50_two_qubit();
  const auto starts = superactivation_initial_states();
  for (const double q : q_grid) {
    SuperactivationPoint point;
    point.q = q;
    const KrausChannel h = horodecki_4d(q);
    point.ppt = is_ppt(h);
    if (point.ppt.ppt) {
      point.horodecki_ceiling = maximize_coherent_information(h, opts);
      point.erasure_ceiling = maximize_coherent_information(erasure, opts);
      point.joint = maximize_coherent_information(tensor(h, erasure), opts, starts);
      if (report.best_index < 0 || point.joint->value > report.best_value) {
        report.best_index = static_cast<int>(report.points.size());
        report.best_value = point.joint->value;
      }
    }
    report.points.push_back(std::move(point));
  }
  return report;
}

KrausChannel nonconvexity_mixture(double p, double q) {
  return flagged_mix(p, horodecki_4d(q), erasure_50_two_qubit());
}

TwoShotValues nonconvexity_two_shot(double p, const DensityMatrix& rho, double q) {
  if (rho.dim() != 16) {
    std::ostringstream os;
    os << "nonconvexity_two_shot: state has dimension " << rho.dim() << ", expected 16";
    throw Error(os.str());
  }
  const KrausChannel m = nonconvexity_mixture(p, q);
  const KrausChannel h = horodecki_4d(q);
  const KrausChannel e = erasure_50_two_qubit();
  TwoShotValues v;
  v.direct = coherent_information(rho, tensor(m, m));
  const double w[] = {p * p, p * (1 - p), (1 - p) * p, (1 - p) * (1 - p)};
  const KrausChannel* pairs[4][2] = {{&h, &h}, {&h, &e}, {&e, &h}, {&e, &e}};
  for (std::size_t i = 0; i < 4; ++i) {
    v.branches[i] = coherent_information(rho, tensor(*pairs[i][0], *pairs[i][1]));
    v.expansion += w[i] * v.branches[i];
  }
  return v;
}

}  // namespace qcap
