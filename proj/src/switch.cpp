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

#include "qcap/switch.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcap/zoo.hpp"

namespace qcap {

namespace {

KrausChannel build_supermap(const KrausChannel& n, const KrausChannel& m) {
  const std::size_t d = n.dim_in();
  if (n.dim_out() != d || m.dim_in() != d || m.dim_out() != d) {
    std::ostringstream os;
    os << "quantum_switch: both channels must act on one square space (got " << n.dim_in()
       << "->" << n.dim_out() << " and " << m.dim_in() << "->" << m.dim_out() << ")";
    throw Error(os.str());
  }
  const ComplexMatrix p0 = matrix_unit(2, 0, 0);
  const ComplexMatrix p1 = matrix_unit(2, 1, 1);
  std::vector<ComplexMatrix> ops;
  ops.reserve(n.num_kraus() * m.num_kraus());
  for (const auto& ni : n.kraus()) {
    for (const auto& mj : m.kraus()) {
      ops.push_back(kron(ComplexMatrix(ni * mj), p0) + kron(ComplexMatrix(mj * ni), p1));
    }
  }
  return KrausChannel(std::move(ops), 2 * d, 2 * d,
                      "switch(" + n.label() + "," + m.label() + ")");
}

}  // namespace

SwitchedChannel quantum_switch(const KrausChannel& n, const KrausChannel& m,
                               const DensityMatrix& rho_c) {
  if (rho_c.dim() != 2) throw Error("quantum_switch: control state must be a qubit");
  KrausChannel supermap = build_supermap(n, m);
  const std::size_t d = n.dim_in();

  const auto eig = eigh(rho_c.matrix());
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index k = 0; k < 2; ++k) {
    const double lambda = eig.values(k);
    if (lambda <= kDefaultTolerances.eig_clip) continue;
    const ComplexMatrix embed = kron(identity(d), ComplexMatrix(eig.vectors.col(k))) *
                                std::sqrt(lambda);
    for (const auto& s : supermap.kraus()) ops.push_back(s * embed);
  }
  KrausChannel effective(std::move(ops), d, 2 * d, supermap.label() + "[control]");
  // The Choi rank bounds the useful Kraus count by 2 d^2.
  if (effective.num_kraus() > 2 * d * d) effective = minimal_kraus(effective);

  SwitchedChannel sw{std::move(supermap), std::move(effective), rho_c, {n, m}, 0};
  sw.n_kraus_pairs = sw.supermap.num_kraus();
  return sw;
}

DensityMatrix switch_control(double p) {
  if (!(p >= 0 && p <= 1)) throw Error("switch_control: p outside [0, 1]");
  ComplexVector psi(2);
  psi << std::sqrt(p), std::sqrt(1 - p);
  return DensityMatrix::pure(psi);
}

DensityMatrix switched_cd_output_formula(const DensityMatrix& rho, double p, std::size_t d) {
  if (rho.dim() != d) throw Error("switched_cd_output_formula: state dimension differs from d");
  if (!(p >= 0 && p <= 1)) throw Error("switched_cd_output_formula: p outside [0, 1]");
  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = p;
  diag(1, 1) = 1 - p;
  const double dd = static_cast<double>(d);
  const ComplexMatrix out = kron(ComplexMatrix(identity(d) / dd), diag) +
                            kron(ComplexMatrix(rho.matrix() / (dd * dd)),
                                 ComplexMatrix(std::sqrt(p * (1 - p)) * pauli_x()));
  return DensityMatrix::trusted(out);
}

RealVector switched_cd_min_output_spectrum(std::size_t d) {
  if (d < 2) throw Error("switched_cd_min_output_spectrum: d must be >= 2");
  const double dd = static_cast<double>(d);
  RealVector l(static_cast<Eigen::Index>(2 * d));
  l(0) = (dd + 1) / (2 * dd * dd);
  l(1) = (dd - 1) / (2 * dd * dd);
  l.tail(static_cast<Eigen::Index>(2 * d - 2)).setConstant(1 / (2 * dd));
  return l;
}

double switched_cd_holevo_closed_form(std::size_t d) {
  const RealVector l = switched_cd_min_output_spectrum(d);
  const double dd = static_cast<double>(d);
  const double h_min = shannon_entropy(l);
  return std::log2(dd) + binary_entropy(0.5 + 1 / (2 * dd * dd)) - h_min;
}

DensityMatrix switched_eb_effective(const DensityMatrix& rho) {
  static const SwitchedChannel sw = quantum_switch(eb_xy(), eb_xy(), switch_control(0.5));
  return qcap::apply(sw.effective, rho);
}

DensityMatrix switched_eb_closed_form(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw Error("switched_eb_closed_form: expects a qubit state");
  ComplexVector plus(2), minus(2);
  plus << std::sqrt(0.5), std::sqrt(0.5);
  minus << std::sqrt(0.5), -std::sqrt(0.5);
  const ComplexMatrix z = pauli_z();
  return DensityMatrix::trusted(0.5 * kron(rho.matrix(), outer(plus)) +
                                0.5 * kron(ComplexMatrix(z * rho.matrix() * z), outer(minus)));
}

BottleneckReport bottleneck_comparison(const KrausChannel& n, const KrausChannel& m,
                                       const DensityMatrix& rho, double p,
                                       const OptimizerOptions& opts, double margin) {
  const SwitchedChannel sw = quantum_switch(n, m, switch_control(p));
  if (rho.dim() != n.dim_in()) throw Error("bottleneck_comparison: state dimension mismatch");
  const std::pair<std::string, KrausChannel> cases[] = {
      {"N", n},
      {"M", m},
      {"N o M", compose(n, m)},
      {"M o N", compose(m, n)},
      {"switch", sw.effective},
  };
  BottleneckReport report;
  for (const auto& [name, ch] : cases) {
    Placement pl;
    pl.name = name;
    pl.ic_at_state = coherent_information(rho, ch);
    pl.ic_max = maximize_coherent_information(ch, opts).value;
    pl.chi_max = maximize_holevo(ch, 0, opts).value;
    report.placements.push_back(std::move(pl));
  }
  const auto& nm = report.placements[2];
  const auto& mn = report.placements[3];
  const auto& s = report.placements[4];
  report.ic_exceeds_sequential = s.ic_max > std::max(nm.ic_max, mn.ic_max) + margin;
  report.chi_exceeds_sequential = s.chi_max > std::max(nm.chi_max, mn.chi_max) + margin;
  return report;
}

}  // namespace qcap
