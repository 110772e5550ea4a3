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

namespace {

DensityMatrix reference_state() {
  ComplexMatrix m(2, 2);
  m << 0.7, Complex(0.2, -0.1), Complex(0.2, 0.1), 0.3;
  return DensityMatrix(m);
}

}  // namespace

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(reference_state()) ==
        doctest::Approx(0.7219280948873623).epsilon(1e-12));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(8)) ==
        doctest::Approx(3.0).epsilon(1e-14));
  CHECK(std::abs(von_neumann_entropy(DensityMatrix::pure(ket(3, 1)))) < 1e-14);
}

TEST_CASE("Shannon and binary entropy") {
  const double p[] = {0.5, 0.25, 0.25, 0.0};
  CHECK(shannon_entropy(std::span<const double>(p)) == doctest::Approx(1.5));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.11) == doctest::Approx(binary_entropy(0.89)));
}

TEST_CASE("coherent information against frozen values") {
  CHECK(coherent_information(reference_state(), depolarizing(0.1)) ==
        doctest::Approx(0.2483964549596197).epsilon(1e-12));
  CHECK(std::abs(coherent_information(reference_state(), eb_xy())) < 1e-12);
  CHECK(coherent_information(DensityMatrix::maximally_mixed(3), identity_channel(3)) ==
        doctest::Approx(std::log2(3.0)));
}

TEST_CASE("coherent information: two routes agree") {
  for (std::uint64_t s = 0; s < 15; ++s) {
    Rng rng(s);
    const KrausChannel ch = random_channel(2 + s % 3, 2 + s % 2, 2 + s % 3, 300 + s);
    const DensityMatrix rho = random_state(ch.dim_in(), rng, s % 2 ? 1 : 0);
    CHECK(coherent_information(rho, ch) ==
          doctest::Approx(coherent_information_via_purification(rho, ch)).epsilon(1e-10));
  }
}

TEST_CASE("coherent information does not depend on the Kraus representation") {
  Rng rng(31);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const KrausChannel ch = random_channel(3, 3, 2, 400 + s);
    const KrausChannel other = testing::remix_kraus(ch, rng, 2);
    const DensityMatrix rho = random_state(3, rng);
    CHECK(std::abs(coherent_information(rho, ch) - coherent_information(rho, other)) < 1e-10);
  }
}

TEST_CASE("purification") {
  Rng rng(9);
  const DensityMatrix rho = random_state(3, rng, 2);
  const ComplexVector phi = purify(rho);
  CHECK(phi.size() == 9);
  const std::size_t dims[] = {3, 3};
  const std::size_t sys[] = {0};
  CHECK((partial_trace(outer(phi), dims, sys) - rho.matrix()).norm() < 1e-12);
}

TEST_CASE("entropy of exchange and mutual information") {
  Rng rng(12);
  const KrausChannel ch = random_channel(2, 3, 3, 12);
  const DensityMatrix rho = random_state(2, rng);
  const double se = entropy_of_exchange(rho, ch);
  CHECK(se == doctest::Approx(von_neumann_entropy(qcap::apply(complementary(ch), rho))));
  const double sb = von_neumann_entropy(qcap::apply(ch, rho));
  CHECK(quantum_mutual_information(rho, ch) ==
        doctest::Approx(von_neumann_entropy(rho) + sb - se));
  CHECK(coherent_information(rho, ch) == doctest::Approx(sb - se));
}

TEST_CASE("Holevo information against a frozen value") {
  Ensemble ens;
  ens.probs = RealVector::Constant(2, 0.5);
  ComplexVector plus = ComplexVector::Constant(2, std::sqrt(0.5));
  ens.states = {DensityMatrix::pure(ket(2, 0)), DensityMatrix::pure(plus)};
  CHECK(holevo_information(ens, depolarizing(0.2)) ==
        doctest::Approx(0.2297385107235163).epsilon(1e-12));
}

TEST_CASE("ensemble validation") {
  Ensemble ens;
  ens.probs = RealVector::Constant(2, 0.6);
  ens.states = {DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(2)};
  CHECK_THROWS_AS(ens.validate(), Error);
  ens.probs = RealVector::Constant(2, 0.5);
  CHECK_NOTHROW(ens.validate());
  ens.states.push_back(DensityMatrix::maximally_mixed(3));
  CHECK_THROWS_AS(ens.validate(), Error);
}

TEST_CASE("data processing for coherent information") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(s);
    const KrausChannel n = random_channel(2, 3, 2, 500 + s);
    const KrausChannel m = random_channel(3, 2, 2, 600 + s);
    const DensityMatrix rho = random_state(2, rng);
    CHECK(coherent_information(rho, compose(m, n)) <= coherent_information(rho, n) + 1e-10);
  }
}

TEST_CASE("minimum output entropy of the depolarizing channel") {
  const MinOutputEntropy r = min_output_entropy(depolarizing(0.1), 4, 3);
  CHECK(r.value == doctest::Approx(0.35335933502142136).epsilon(1e-7));
  CHECK(std::abs(r.state.norm() - 1.0) < 1e-10);
}
