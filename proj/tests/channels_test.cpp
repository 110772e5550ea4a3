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

#include "qcap/channel_io.hpp"
#include "qcap/channels.hpp"
#include "qcap/zoo.hpp"
#include "test_util.hpp"

using namespace qcap;
using qcap::testing::random_state;

TEST_CASE("density matrix validation") {
  ComplexMatrix m = identity(2) / 2.0;
  CHECK_NOTHROW(DensityMatrix{m});
  CHECK_THROWS_WITH_AS(DensityMatrix{ComplexMatrix(identity(2))}, doctest::Contains("trace"),
                       Error);
  ComplexMatrix neg(2, 2);
  neg << 1.2, 0, 0, -0.2;
  CHECK_THROWS_AS(DensityMatrix{neg}, Error);
  ComplexMatrix nh = m;
  nh(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{nh}, Error);
  CHECK_THROWS_AS(DensityMatrix{ComplexMatrix(2, 3)}, Error);
}

TEST_CASE("non-CPTP Kraus sets are rejected with the residual") {
  std::vector<ComplexMatrix> k{identity(2) * 0.9};
  CHECK_THROWS_WITH_AS(KrausChannel(k, 2, 2), doctest::Contains("completeness"), Error);
  std::vector<ComplexMatrix> wrong{identity(3)};
  CHECK_THROWS_AS(KrausChannel(wrong, 2, 2), Error);
  CHECK_THROWS_AS(KrausChannel({}, 2, 2), Error);
}

TEST_CASE("outputs of random channels are states") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(s);
    const std::size_t din = 2 + s % 3, dout = 2 + (s / 3) % 3, k = 1 + s % 4;
    const KrausChannel ch = random_channel(din, dout, k, s);
    const ComplexMatrix out = qcap::apply(ch, random_state(din, rng)).matrix();
    CHECK(std::abs(out.trace() - Complex(1)) < 1e-12);
    CHECK(eigvalsh(out).minCoeff() > -1e-12);
    CHECK(hermiticity_defect(out) < 1e-12);
  }
}

TEST_CASE("adjoint is dual to the channel") {
  Rng rng(4);
  const KrausChannel ch = random_channel(3, 2, 3, 9);
  const ComplexMatrix x = ginibre(3, 3, rng), y = ginibre(2, 2, rng);
  const Complex lhs = (y.adjoint() * qcap::apply(ch, x)).trace();
  const Complex rhs = (apply_adjoint(ch, y).adjoint() * x).trace();
  CHECK(std::abs(lhs - rhs) < 1e-12);
  const ComplexMatrix e = ginibre(3, 3, rng);
  CHECK(std::abs((e.adjoint() * apply_complementary(ch, x)).trace() -
                 (apply_complementary_adjoint(ch, e).adjoint() * x).trace()) < 1e-12);
}

TEST_CASE("Choi round trip") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const KrausChannel ch = random_channel(2 + s % 2, 2 + s % 3, 2 + s % 3, 100 + s);
    const ChoiState c = choi(ch);
    CHECK(std::abs(c.state.matrix().trace() - Complex(1)) < 1e-12);
    const KrausChannel back = kraus_from_choi(c);
    CHECK(action_distance(ch, back) < 1e-9);
    CHECK(back.num_kraus() <= ch.dim_in() * ch.dim_out());
  }
}

TEST_CASE("Choi matrix has the input marginal I/d on the reference") {
  const KrausChannel ch = random_channel(3, 2, 4, 5);
  const std::size_t dims[] = {2, 3};
  const std::size_t ref[] = {1};
  CHECK((partial_trace(choi_matrix(ch), dims, ref) - identity(3) / 3.0).norm() < 1e-12);
}

TEST_CASE("minimal Kraus of a redundant set") {
  Rng rng(17);
  const KrausChannel dep = depolarizing(0.3);
  const KrausChannel big = testing::remix_kraus(dep, rng, 3);
  CHECK(big.num_kraus() == 7);
  const KrausChannel m = minimal_kraus(big);
  CHECK(m.num_kraus() == 4);
  CHECK(action_distance(m, dep) < 1e-10);
  CHECK(minimal_kraus(identity_channel(3)).num_kraus() == 1);
}

TEST_CASE("Stinespring isometry") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(s);
    const KrausChannel ch = random_channel(3, 2, 2 + s % 4, 200 + s);
    const ComplexMatrix v = isometric_extension(ch);
    CHECK((v.adjoint() * v - identity(3)).norm() < 1e-10);
    const DensityMatrix rho = random_state(3, rng);
    const ComplexMatrix big = v * rho.matrix() * v.adjoint();
    const std::size_t dims[] = {ch.dim_out(), ch.num_kraus()};
    const std::size_t b[] = {0}, e[] = {1};
    CHECK((partial_trace(big, dims, b) - qcap::apply(ch, rho).matrix()).norm() < 1e-10);
    CHECK((partial_trace(big, dims, e) - apply_complementary(ch, rho.matrix())).norm() < 1e-10);
    CHECK((qcap::apply(complementary(ch), rho).matrix() -
           apply_complementary(ch, rho.matrix())).norm() < 1e-12);
  }
}

TEST_CASE("composition and tensor products") {
  Rng rng(2);
  const KrausChannel a = random_channel(2, 3, 2, 1), b = random_channel(3, 2, 2, 2);
  const DensityMatrix rho = random_state(2, rng);
  const ComplexMatrix seq = qcap::apply(b, qcap::apply(a, rho)).matrix();
  CHECK((qcap::apply(compose(b, a), rho).matrix() - seq).norm() < 1e-12);
  CHECK_THROWS_AS(compose(a, a), Error);

  const DensityMatrix r1 = random_state(2, rng), r2 = random_state(3, rng);
  const DensityMatrix joint = DensityMatrix::trusted(kron(r1.matrix(), r2.matrix()));
  const ComplexMatrix out = qcap::apply(tensor(a, b), joint).matrix();
  const ComplexMatrix expect = kron(qcap::apply(a, r1).matrix(), qcap::apply(b, r2).matrix());
  CHECK((out - expect).norm() < 1e-12);
  CHECK(tensor_power(a, 2).dim_in() == 4);
  CHECK(tensor_power(a, 2).dim_out() == 9);
}

TEST_CASE("reference is untouched by apply_with_reference") {
  Rng rng(6);
  const KrausChannel ch = random_channel(2, 3, 3, 7);
  const DensityMatrix joint = random_state(4, rng);
  const ComplexMatrix out = apply_with_reference(ch, joint, 2).matrix();
  const std::size_t din[] = {2, 2}, dout[] = {3, 2};
  const std::size_t ref[] = {1};
  CHECK((partial_trace(out, dout, ref) - partial_trace(joint.matrix(), din, ref)).norm() < 1e-12);
}

TEST_CASE("maximally entangled state") {
  const DensityMatrix phi = DensityMatrix::maximally_entangled(3);
  CHECK(phi.dim() == 9);
  CHECK(std::abs((phi.matrix() * phi.matrix()).trace() - Complex(1)) < 1e-12);
  CHECK(std::abs(phi.matrix()(0, 8) - Complex(1.0 / 3)) < 1e-15);
}

TEST_CASE("JSON round trip") {
  const KrausChannel ch = horodecki_4d();
  const nlohmann::json j = channel_to_json(ch);
  CHECK(j["dim_in"] == 4);
  CHECK(j["kraus"][0][0][0].size() == 2);
  const KrausChannel back = channel_from_json(j);
  CHECK(action_distance(ch, back) < 1e-15);
  CHECK(back.label() == ch.label());
}

TEST_CASE("JSON shape errors carry a pointer") {
  nlohmann::json j = channel_to_json(depolarizing(0.1));
  j["kraus"][1][0][1] = nlohmann::json::array({1.0});
  CHECK_THROWS_WITH_AS(channel_document_from_json(j), doctest::Contains("/kraus/1/0/1"), Error);
  nlohmann::json k = channel_to_json(depolarizing(0.1));
  k["dim_out"] = 3;
  CHECK_THROWS_AS(channel_from_json(k), Error);
  nlohmann::json notcp = channel_to_json(depolarizing(0.1));
  notcp["kraus"][0][0][0][0] = 2.0;
  CHECK(channel_document_from_json(notcp).kraus.size() == 4);
  CHECK_THROWS_WITH_AS(channel_from_json(notcp), doctest::Contains("completeness"), Error);
}

TEST_CASE("JSON syntax errors report line and column") {
  const std::string text = "{\n  \"dim_in\": 2,\n  \"kraus\": [1, }\n";
  CHECK_THROWS_WITH_AS(parse_channel_document(text, "broken.json"),
                       doctest::Contains("broken.json:3:"), Error);
}
