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

#include "qcap/zoo.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "qcap/optimize.hpp"
#include "qcap/random.hpp"

namespace qcap {

namespace {

std::string fmt_param(const char* name, double v) {
  std::ostringstream os;
  os << name << "=" << v;
  return os.str();
}

void require_unit_interval(double x, const char* what, bool open = false) {
  const bool ok = open ? (x > 0.0 && x < 1.0) : (x >= 0.0 && x <= 1.0);
  if (!ok || !std::isfinite(x)) {
    std::ostringstream os;
    os << what << " = " << x << " is outside " << (open ? "(0, 1)" : "[0, 1]");
    throw Error(os.str());
  }
}

}  // namespace

KrausChannel depolarizing(double q) {
  require_unit_interval(q, "depolarizing: q");
  const double w = std::sqrt(q / 3.0);
  return KrausChannel({std::sqrt(1.0 - q) * pauli_i(), w * pauli_x(), w * pauli_y(), w * pauli_z()},
                      2, 2, "dep:" + fmt_param("q", q));
}

std::vector<ComplexMatrix> weyl_heisenberg(std::size_t d) {
  if (d == 0) throw Error("weyl_heisenberg: dimension must be positive");
  ComplexMatrix shift = ComplexMatrix::Zero(d, d);
  ComplexMatrix clock = ComplexMatrix::Zero(d, d);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t j = 0; j < d; ++j) {
    shift((j + 1) % d, j) = 1.0;
    clock(j, j) = std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(d));
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(d * d);
  ComplexMatrix xa = identity(d);
  for (std::size_t a = 0; a < d; ++a) {
    ComplexMatrix zb = identity(d);
    for (std::size_t b = 0; b < d; ++b) {
      ops.push_back(xa * zb);
      zb = zb * clock;
    }
    xa = xa * shift;
  }
  return ops;
}

KrausChannel completely_depolarizing(std::size_t d) {
  if (d < 2) throw Error("completely_depolarizing: d must be >= 2");
  auto ops = weyl_heisenberg(d);
  for (auto& u : ops) u /= static_cast<double>(d);
  return KrausChannel(std::move(ops), d, d, "cd:d=" + std::to_string(d));
}

KrausChannel pauli_channel(double p_i, double p_x, double p_y, double p_z) {
  const double p[] = {p_i, p_x, p_y, p_z};
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw Error("pauli_channel: probabilities must be nonnegative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "pauli_channel: probabilities sum to " << sum;
    throw Error(os.str());
  }
  std::ostringstream label;
  label << "pauli:px=" << p_x << ",py=" << p_y << ",pz=" << p_z;
  return KrausChannel({std::sqrt(p_i) * pauli_i(), std::sqrt(p_x) * pauli_x(),
                       std::sqrt(p_y) * pauli_y(), std::sqrt(p_z) * pauli_z()},
                      2, 2, label.str());
}

KrausChannel erasure_50_two_qubit() {
  const double h = std::sqrt(0.5);
  std::vector<ComplexMatrix> ops;
  ComplexMatrix embed = ComplexMatrix::Zero(5, 4);
  embed.topRows(4) = identity(4);
  ops.push_back(h * embed);
  for (std::size_t i = 0; i < 4; ++i) {
    ComplexMatrix flag = ComplexMatrix::Zero(5, 4);
    flag(4, i) = h;
    ops.push_back(std::move(flag));
  }
  return KrausChannel(std::move(ops), 4, 5, "erasure50");
}

KrausChannel horodecki_4d(double q, ShieldSign sign) {
  require_unit_interval(q, "horodecki_4d: q", /*open=*/true);
  const double c = std::cos(std::numbers::pi / 8);  // (1/2) sqrt(2 + sqrt 2)
  const double s = std::sin(std::numbers::pi / 8);  // (1/2) sqrt(2 - sqrt 2)
  ComplexMatrix m0 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix m1 = ComplexMatrix::Zero(2, 2);
  m0(0, 0) = c;
  m0(1, 1) = s;
  m1(0, 0) = s;
  m1(1, 1) = sign == ShieldSign::kOpposite ? -c : c;
  const ComplexMatrix p0 = matrix_unit(2, 0, 0);
  const ComplexMatrix p1 = matrix_unit(2, 1, 1);
  const double a = std::sqrt(q / 2);
  const double b = std::sqrt(q / 4);
  const double r = std::sqrt(1 - q);
  std::vector<ComplexMatrix> ops = {
      a * kron(pauli_i(), p0),       a * kron(pauli_z(), p1),
      b * kron(pauli_z(), pauli_y()), b * kron(pauli_i(), pauli_x()),
      r * kron(pauli_x(), m0),       r * kron(pauli_y(), m1),
  };
  std::string label = "horodecki:" + fmt_param("q", q);
  if (sign == ShieldSign::kSame) label += ",sign=same";
  return KrausChannel(std::move(ops), 4, 4, std::move(label));
}

KrausChannel eb_xy() {
  const double h = std::sqrt(0.5);
  return KrausChannel({h * pauli_x(), h * pauli_y()}, 2, 2, "ebxy");
}

KrausChannel flagged_mix(double p, const KrausChannel& a, const KrausChannel& b) {
  require_unit_interval(p, "flagged_mix: p");
  if (a.dim_in() != b.dim_in()) {
    std::ostringstream os;
    os << "flagged_mix: input dimensions differ (" << a.dim_in() << " vs " << b.dim_in() << ")";
    throw Error(os.str());
  }
  const std::size_t common = std::max(a.dim_out(), b.dim_out());
  const ComplexVector flag0 = ket(2, 0);
  const ComplexVector flag1 = ket(2, 1);
  std::vector<ComplexMatrix> ops;
  auto add = [&](const KrausChannel& ch, double w, const ComplexVector& flag) {
    if (w == 0) return;
    for (const auto& k : ch.kraus()) {
      ComplexMatrix embedded = ComplexMatrix::Zero(common, ch.dim_in());
      embedded.topRows(k.rows()) = k;
      ops.push_back(std::sqrt(w) * kron(embedded, ComplexMatrix(flag)));
    }
  };
  add(a, p, flag0);
  add(b, 1 - p, flag1);
  std::ostringstream label;
  label << "flagged(p=" << p << "," << a.label() << "," << b.label() << ")";
  return KrausChannel(std::move(ops), a.dim_in(), 2 * common, label.str());
}

std::pair<KrausChannel, KrausChannel> random_conjugate_pair(std::size_t d, std::size_t k,
                                                            std::uint64_t seed) {
  if (d < 2 || k < 1) throw Error("random_conjugate_pair: need d >= 2 and k >= 1");
  Rng rng(seed);
  const RealVector p = random_simplex(k, rng);
  std::vector<ComplexMatrix> ops, conj_ops;
  for (std::size_t i = 0; i < k; ++i) {
    const ComplexMatrix u = haar_unitary(d, rng);
    ops.push_back(std::sqrt(p(i)) * u.adjoint());
    conj_ops.push_back(std::sqrt(p(i)) * u.transpose());
  }
  const std::string tag = "(d=" + std::to_string(d) + ",k=" + std::to_string(k) +
                          ",seed=" + std::to_string(seed) + ")";
  return {KrausChannel(std::move(ops), d, d, "random_unitary" + tag),
          KrausChannel(std::move(conj_ops), d, d, "random_unitary_conj" + tag)};
}

KrausChannel random_channel(std::size_t dim_in, std::size_t dim_out, std::size_t k,
                            std::uint64_t seed) {
  Rng rng(seed);
  const ComplexMatrix v = haar_isometry(dim_out * k, dim_in, rng);
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < k; ++i) ops.push_back(v.middleRows(i * dim_out, dim_out));
  return KrausChannel(std::move(ops), dim_in, dim_out, "random");
}

// ---------------------------------------------------------------------------
// Classifiers

PptResult is_ppt(const KrausChannel& ch, const Tolerances& tol) {
  const std::size_t dims[] = {ch.dim_out(), ch.dim_in()};
  const std::size_t reference[] = {1};
  const ComplexMatrix pt = partial_transpose(choi_matrix(ch), dims, reference);
  const double min_eig = eigvalsh(pt, tol).minCoeff();
  return {min_eig >= -tol.psd_tol, min_eig};
}

std::string_view to_string(Degradability d) {
  switch (d) {
    case Degradability::kDegradable:
      return "degradable";
    case Degradability::kAntidegradable:
      return "antidegradable";
    case Degradability::kUndetermined:
      break;
  }
  return "undetermined";
}

namespace {

// Row-major vec.
ComplexVector vec(const ComplexMatrix& m) {
  ComplexVector v(m.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) v(r * m.cols() + c) = m(r, c);
  }
  return v;
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = v(r * cols + c);
  }
  return m;
}

// Hermitian operator basis of dimension d (d^2 elements).
std::vector<ComplexMatrix> hermitian_basis(std::size_t d) {
  std::vector<ComplexMatrix> basis;
  const Complex i(0, 1);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      if (a == b) {
        basis.push_back(matrix_unit(d, a, a));
      } else if (a < b) {
        basis.push_back(matrix_unit(d, a, b) + matrix_unit(d, b, a));
      } else {
        basis.push_back(i * (matrix_unit(d, b, a) - matrix_unit(d, a, b)));
      }
    }
  }
  return basis;
}

constexpr std::size_t kMaxWitnessUnknowns = 4096;
constexpr double kRefinedWitnessTol = 1e-6;

struct PostProcessing {
  bool found = false;
  double residual = NAN;
};

// Searches for a CPTP map `omega` with omega o source = target on all inputs.
PostProcessing find_post_processing(const KrausChannel& source, const KrausChannel& target,
                                    const Tolerances& tol) {
  const std::size_t din = source.dim_in();
  const std::size_t dmid = source.dim_out();
  const std::size_t dfin = target.dim_out();
  const std::size_t n_mid = dmid * dmid;
  const std::size_t n_fin = dfin * dfin;
  if (n_mid * n_fin > kMaxWitnessUnknowns) return {};

  // Stage 1: minimum-norm linear solve for the superoperator T (n_fin x
  // n_mid, row-major vec) with T S = R and trace preservation.
  const std::size_t n_in = din * din;
  ComplexMatrix s(n_mid, n_in), r(n_fin, n_in);
  for (std::size_t i = 0; i < din; ++i) {
    for (std::size_t j = 0; j < din; ++j) {
      const ComplexMatrix e = matrix_unit(din, i, j);
      s.col(i * din + j) = vec(qcap::apply(source, e));
      r.col(i * din + j) = vec(qcap::apply(target, e));
    }
  }
  const std::size_t unknowns = n_fin * n_mid;
  ComplexMatrix a = ComplexMatrix::Zero(n_fin * n_in + n_mid, unknowns);
  ComplexVector rhs(n_fin * n_in + n_mid);
  for (std::size_t row = 0; row < n_fin; ++row) {
    a.block(row * n_in, row * n_mid, n_in, n_mid) = s.transpose();
    rhs.segment(row * n_in, n_in) = r.row(row).transpose();
  }
  for (std::size_t c = 0; c < n_mid; ++c) {
    for (std::size_t k = 0; k < dfin; ++k) a(n_fin * n_in + c, (k * dfin + k) * n_mid + c) = 1.0;
    rhs(n_fin * n_in + c) = (c / dmid == c % dmid) ? 1.0 : 0.0;
  }
  const ComplexVector x = a.completeOrthogonalDecomposition().solve(rhs);
  const double linear_residual = (a * x - rhs).norm();

  // Choi matrix of omega: C[(a*dmid+i),(b*dmid+j)] = omega(E_ij)[a,b] / dmid.
  ComplexMatrix c = ComplexMatrix::Zero(dfin * dmid, dfin * dmid);
  for (std::size_t i = 0; i < dmid; ++i) {
    for (std::size_t j = 0; j < dmid; ++j) {
      ComplexVector col(n_fin);
      for (std::size_t row = 0; row < n_fin; ++row) col(row) = x(row * n_mid + i * dmid + j);
      const ComplexMatrix out = unvec(col, dfin, dfin);
      for (std::size_t p = 0; p < dfin; ++p) {
        for (std::size_t q = 0; q < dfin; ++q) {
          c(p * dmid + i, q * dmid + j) = out(p, q) / static_cast<double>(dmid);
        }
      }
    }
  }
  const double cp_tol = 10 * tol.cptp_tol;
  if (linear_residual > 1e-6) return {false, linear_residual};  // no linear solution at all
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian_part(c));
  if (linear_residual <= cp_tol && eig.eigenvalues().minCoeff() >= -cp_tol) {
    return {true, linear_residual};
  }

  // Stage 2: fit omega with Kraus operators B_c (always CP), minimizing the
  // equation residual plus the trace-preservation residual.
  const std::size_t nk = dfin * dmid;
  const auto basis = hermitian_basis(din);
  std::vector<ComplexMatrix> src, tgt;
  for (const auto& h : basis) {
    src.push_back(qcap::apply(source, h));
    tgt.push_back(qcap::apply(target, h));
  }
  const Objective objective = [&](const RealVector& xv, RealVector& grad) {
    // All Kraus operators stacked into one (nk*dfin) x dmid matrix.
    const ComplexMatrix big = unpack(xv, nk * dfin, dmid);
    ComplexMatrix gbig = ComplexMatrix::Zero(nk * dfin, dmid);
    double f = 0.0;
    for (std::size_t t = 0; t < src.size(); ++t) {
      ComplexMatrix out = -tgt[t];
      for (std::size_t k = 0; k < nk; ++k) {
        const auto bk = big.middleRows(k * dfin, dfin);
        out.noalias() += bk * src[t] * bk.adjoint();
      }
      f += out.squaredNorm();
      for (std::size_t k = 0; k < nk; ++k) {
        gbig.middleRows(k * dfin, dfin).noalias() +=
            4.0 * out * big.middleRows(k * dfin, dfin) * src[t];
      }
    }
    ComplexMatrix tp = -identity(dmid);
    for (std::size_t k = 0; k < nk; ++k) {
      const auto bk = big.middleRows(k * dfin, dfin);
      tp.noalias() += bk.adjoint() * bk;
    }
    f += tp.squaredNorm();
    for (std::size_t k = 0; k < nk; ++k) {
      gbig.middleRows(k * dfin, dfin).noalias() += 4.0 * big.middleRows(k * dfin, dfin) * tp;
    }
    grad = pack(gbig);
    return f;
  };

  // Start from the PSD part of the stage-1 solution plus a small kick.
  Rng rng(derive_seed(0x5eed, nk));
  ComplexMatrix big(nk * dfin, dmid);
  for (std::size_t k = 0; k < nk; ++k) {
    const double lambda = std::max(eig.eigenvalues()(static_cast<Eigen::Index>(k)), 0.0);
    const ComplexVector v = eig.eigenvectors().col(static_cast<Eigen::Index>(k));
    big.middleRows(k * dfin, dfin) =
        std::sqrt(lambda * static_cast<double>(dmid)) * unvec(v, dfin, dmid);
  }
  big += 1e-3 * ginibre(nk * dfin, dmid, rng);
  LbfgsOptions opts;
  opts.max_iters = 5000;
  opts.conv_tol = 1e-30;
  opts.grad_tol = 1e-14;
  const auto res = minimize_lbfgs(objective, pack(big), opts);
  const double refined = std::sqrt(std::max(res.value, 0.0));
  return {refined <= kRefinedWitnessTol, refined};
}

}  // namespace

DegradabilityReport degradability_witness(const KrausChannel& ch, const Tolerances& tol) {
  const KrausChannel env = complementary(ch);
  DegradabilityReport report;
  const auto deg = find_post_processing(ch, env, tol);
  const auto anti = find_post_processing(env, ch, tol);
  report.degradable = deg.found;
  report.antidegradable = anti.found;
  report.degrading_residual = deg.residual;
  report.antidegrading_residual = anti.residual;
  if (report.antidegradable) {
    report.verdict = Degradability::kAntidegradable;
  } else if (report.degradable) {
    report.verdict = Degradability::kDegradable;
  }
  return report;
}

ChannelClassReport classify(const KrausChannel& ch, const Tolerances& tol) {
  ChannelClassReport report;
  report.ppt = is_ppt(ch, tol);
  report.separability_shortcut_applicable = ch.dim_in() * ch.dim_out() <= 6;
  report.entanglement_breaking_hint = report.ppt.ppt && report.separability_shortcut_applicable;
  report.degradability = degradability_witness(ch, tol);
  return report;
}

// ---------------------------------------------------------------------------
// Channel specs

namespace {

std::map<std::string, double> parse_params(std::string_view text, std::string_view spec) {
  std::map<std::string, double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error("channel spec '" + std::string(spec) + "': expected key=value, got '" +
                  std::string(item) + "'");
    }
    const std::string key(item.substr(0, eq));
    const std::string value(item.substr(eq + 1));
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) {
      throw Error("channel spec '" + std::string(spec) + "': bad number '" + value + "'");
    }
    out[key] = v;
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

double take(std::map<std::string, double>& params, const std::string& key, double fallback,
            bool required, std::string_view spec) {
  auto it = params.find(key);
  if (it == params.end()) {
    if (required) {
      throw Error("channel spec '" + std::string(spec) + "': missing parameter '" + key + "'");
    }
    return fallback;
  }
  const double v = it->second;
  params.erase(it);
  return v;
}

std::size_t take_dim(std::map<std::string, double>& params, std::string_view spec, double fallback,
                     bool required) {
  const double d = take(params, "d", fallback, required, spec);
  if (d < 1 || d != std::floor(d)) {
    throw Error("channel spec '" + std::string(spec) + "': d must be a positive integer");
  }
  return static_cast<std::size_t>(d);
}

}  // namespace

KrausChannel channel_from_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string name(spec.substr(0, colon));
  auto params = colon == std::string_view::npos ? std::map<std::string, double>{}
                                                : parse_params(spec.substr(colon + 1), spec);
  KrausChannel ch = [&]() -> KrausChannel {
    if (name == "dep" || name == "depolarizing") {
      return depolarizing(take(params, "q", 0, true, spec));
    }
    if (name == "cd") return completely_depolarizing(take_dim(params, spec, 2, false));
    if (name == "pauli") {
      const double px = take(params, "px", 0, false, spec);
      const double py = take(params, "py", 0, false, spec);
      const double pz = take(params, "pz", 0, false, spec);
      return pauli_channel(1 - px - py - pz, px, py, pz);
    }
    if (name == "erasure50") return erasure_50_two_qubit();
    if (name == "horodecki") {
      const double q = take(params, "q", kHorodeckiPptQ, false, spec);
      const double same = take(params, "same_sign", 0, false, spec);
      return horodecki_4d(q, same != 0 ? ShieldSign::kSame : ShieldSign::kOpposite);
    }
    if (name == "ebxy") return eb_xy();
    if (name == "id" || name == "identity") return identity_channel(take_dim(params, spec, 2, false));
    throw Error("unknown channel '" + name + "' (see `qcap zoo list`)");
  }();
  if (!params.empty()) {
    throw Error("channel spec '" + std::string(spec) + "': unknown parameter '" +
                params.begin()->first + "'");
  }
  return ch;
}

std::vector<ZooEntry> zoo_catalog() {
  return {
      {"dep", "q in [0,1]", "qubit depolarizing (1-q) rho + q/3 (X.X + Y.Y + Z.Z)"},
      {"cd", "d >= 2 (default 2)", "completely depolarizing via Weyl-Heisenberg unitaries"},
      {"pauli", "px, py, pz", "qubit Pauli channel, pI = 1 - px - py - pz"},
      {"erasure50", "", "two-qubit 50% erasure channel, 4 -> 5 levels"},
      {"horodecki", "q in (0,1) (default 2-sqrt(2)), same_sign=0|1",
       "4-dimensional PPT channel (key qubit (x) shield qubit)"},
      {"ebxy", "", "entanglement-breaking (X.X + Y.Y)/2"},
      {"id", "d (default 2)", "identity channel"},
  };
}

}  // namespace qcap
