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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qcap/entropics.hpp"
#include "qcap/zoo.hpp"
#include "test_util.hpp"

using namespace qcap;
using qcap::testing::random_state;

TEST_CASE("depolarizing action") {
  const KrausChannel ch = depolarizing(0.3);
  CHECK(ch.num_kraus() == 4);
  ComplexMatrix expect(2, 2);
  // |0><0| -> (1 - 2q/3)|0><0| + (2q/3)|1><1|
  expect << 0.8, 0, 0, 0.2;
  CHECK((qcap::apply(ch, DensityMatrix::pure(ket(2, 0))).matrix() - expect).norm() < 1e-14);
  CHECK_THROWS_AS(depolarizing(1.2), Error);
}

TEST_CASE("Weyl-Heisenberg operators are orthogonal unitaries") {
  const auto w = weyl_heisenberg(3);
  REQUIRE(w.size() == 9);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK((w[i].adjoint() * w[i] - identity(3)).norm() < 1e-12);
    for (std::size_t j = 0; j < 9; ++j) {
      CHECK(std::abs((w[i].adjoint() * w[j]).trace() - Complex(i == j ? 3.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("completely depolarizing channel") {
  Rng rng(3);
  const KrausChannel cd = completely_depolarizing(4);
  CHECK((qcap::apply(cd, random_state(4, rng)).matrix() - identity(4) / 4.0).norm() < 1e-12);
}

TEST_CASE("pauli channel validates its weights") {
  CHECK_NOTHROW(pauli_channel(0.7, 0.1, 0.1, 0.1));
  CHECK_THROWS_AS(pauli_channel(0.7, 0.1, 0.1, 0.2), Error);
  CHECK(action_distance(pauli_channel(0.7, 0.1, 0.1, 0.1), depolarizing(0.3)) < 1e-14);
}

TEST_CASE("erasure channel: output flag and zero coherent information") {
  const KrausChannel e = erasure_50_two_qubit();
  CHECK(e.dim_in() == 4);
  CHECK(e.dim_out() == 5);
  Rng rng(4);
  const DensityMatrix rho = random_state(4, rng);
  const ComplexMatrix out = qcap::apply(e, rho).matrix();
  CHECK(std::abs(out(4, 4) - Complex(0.5)) < 1e-12);
  CHECK((out.topLeftCorner(4, 4) - rho.matrix() / 2.0).norm() < 1e-12);
  CHECK(std::abs(coherent_information(rho, e)) < 1e-10);
}

TEST_CASE("Horodecki channel: PPT exactly at the default parameter") {
  const PptResult at = is_ppt(horodecki_4d());
  CHECK(at.ppt);
  CHECK(at.min_eigenvalue >= -1e-10);
  const PptResult off = is_ppt(horodecki_4d(0.5));
  CHECK_FALSE(off.ppt);
  CHECK(off.min_eigenvalue == doctest::Approx(-0.02588834764831846).epsilon(1e-10));
  const PptResult same = is_ppt(horodecki_4d(kHorodeckiPptQ, ShieldSign::kSame));
  CHECK_FALSE(same.ppt);
  CHECK(same.min_eigenvalue == doctest::Approx(-0.07322330470336315).epsilon(1e-10));
}

TEST_CASE("Horodecki channel with equal shield signs is never PPT") {
  for (int i = 1; i < 100; ++i) {
    CAPTURE(i);
    CHECK(is_ppt(horodecki_4d(i / 100.0, ShieldSign::kSame)).min_eigenvalue < -0.05);
  }
}

TEST_CASE("PPT test on standard channels") {
  const PptResult dep = is_ppt(depolarizing(0.1));
  CHECK_FALSE(dep.ppt);
  CHECK(dep.min_eigenvalue == doctest::Approx(-0.4).epsilon(1e-12));
  CHECK(is_ppt(depolarizing(0.5)).ppt);
  CHECK(is_ppt(eb_xy()).ppt);
  CHECK(is_ppt(completely_depolarizing(3)).ppt);
}

TEST_CASE("eb_xy is an equal mix of X and Y conjugation") {
  const KrausChannel eb = eb_xy();
  const ComplexMatrix out = qcap::apply(eb, DensityMatrix::pure(ket(2, 0))).matrix();
  CHECK((out - outer(ket(2, 1))).norm() < 1e-12);
  const DensityMatrix plus = DensityMatrix::pure(ComplexVector::Constant(2, std::sqrt(0.5)));
  CHECK((qcap::apply(eb, plus).matrix() - identity(2) / 2.0).norm() < 1e-12);
}

TEST_CASE("flagged mixture") {
  const KrausChannel m = flagged_mix(0.3, depolarizing(0.1), eb_xy());
  CHECK(m.dim_out() == 4);
  Rng rng(5);
  const DensityMatrix rho = random_state(2, rng);
  const ComplexMatrix out = qcap::apply(m, rho).matrix();
  const std::size_t dims[] = {2, 2};
  const std::size_t flag[] = {1};
  const ComplexMatrix f = partial_trace(out, dims, flag);
  CHECK(std::abs(f(0, 0) - Complex(0.3)) < 1e-12);
  CHECK(std::abs(f(0, 1)) < 1e-12);
}

TEST_CASE("random conjugate pair acts by complex conjugation") {
  Rng rng(6);
  const auto [a, b] = random_conjugate_pair(3, 2, 77);
  const DensityMatrix rho = random_state(3, rng);
  const DensityMatrix rho_bar = DensityMatrix::trusted(rho.matrix().conjugate());
  CHECK((qcap::apply(b, rho).matrix() - qcap::apply(a, rho_bar).matrix().conjugate()).norm() <
        1e-12);
}

TEST_CASE("degradability witnesses") {
  const DegradabilityReport id = degradability_witness(identity_channel(2));
  CHECK(id.degradable);
  CHECK(id.verdict == Degradability::kDegradable);

  const DegradabilityReport eb = degradability_witness(eb_xy());
  CHECK(eb.antidegradable);
  CHECK(eb.verdict == Degradability::kAntidegradable);

  const DegradabilityReport dep = degradability_witness(depolarizing(0.1));
  CHECK_FALSE(dep.degradable);
  CHECK_FALSE(dep.antidegradable);
  CHECK(dep.verdict == Degradability::kUndetermined);
  CHECK(to_string(Degradability::kUndetermined) == "undetermined");
}

TEST_CASE("50% erasure is symmetric" * doctest::timeout(60)) {
  const DegradabilityReport r = degradability_witness(erasure_50_two_qubit());
  CHECK(r.degradable);
  CHECK(r.antidegradable);
  CHECK(r.degrading_residual < 1e-6);
  CHECK(r.antidegrading_residual < 1e-6);
}

TEST_CASE("classify") {
  const ChannelClassReport eb = classify(eb_xy());
  CHECK(eb.separability_shortcut_applicable);
  CHECK(eb.entanglement_breaking_hint);
  const ChannelClassReport h = classify(horodecki_4d());
  CHECK(h.ppt.ppt);
  CHECK_FALSE(h.separability_shortcut_applicable);
  CHECK_FALSE(h.entanglement_breaking_hint);
}

TEST_CASE("channel specs") {
  CHECK(action_distance(channel_from_spec("dep:q=0.19"), depolarizing(0.19)) < 1e-15);
  CHECK(channel_from_spec("cd:d=3").dim_in() == 3);
  CHECK(channel_from_spec("erasure50").dim_out() == 5);
  CHECK(action_distance(channel_from_spec("horodecki"), horodecki_4d()) < 1e-15);
  CHECK(channel_from_spec("id:d=2").num_kraus() == 1);
  CHECK_THROWS_AS(channel_from_spec("nope"), Error);
  CHECK_THROWS_AS(channel_from_spec("dep"), Error);
  CHECK_THROWS_AS(channel_from_spec("dep:q=0.1,r=2"), Error);
  CHECK_THROWS_AS(channel_from_spec("dep:q=abc"), Error);
}

TEST_CASE("every catalog entry builds") {
  CHECK(zoo_catalog().size() == 7);
  for (const char* spec : {"dep:q=0.1", "cd", "pauli:px=0.1,py=0,pz=0.2", "erasure50",
                           "horodecki:q=0.5,same_sign=1", "ebxy", "id"}) {
    CAPTURE(spec);
    CHECK_NOTHROW(channel_from_spec(spec));
  }
}
