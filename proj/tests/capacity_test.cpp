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

#include "qcap/capacity.hpp"
#include "test_util.hpp"

using namespace qcap;
using qcap::testing::random_state;

TEST_CASE("L-BFGS minimizes the Rosenbrock function") {
  const Objective rosen = [](const RealVector& x, RealVector& g) {
    const double a = 1 - x(0), b = x(1) - x(0) * x(0);
    g.resize(2);
    g(0) = -2 * a - 400 * x(0) * b;
    g(1) = 200 * b;
    return a * a + 100 * b * b;
  };
  RealVector x0(2);
  x0 << -1.2, 1.0;
  LbfgsOptions o;
  o.conv_tol = 1e-16;
  o.grad_tol = 1e-10;
  const LbfgsResult r = minimize_lbfgs(rosen, x0, o);
  CHECK(r.converged);
  CHECK(std::abs(r.x(0) - 1) < 1e-5);
  CHECK(std::abs(r.x(1) - 1) < 1e-5);
}

TEST_CASE("pack and unpack") {
  Rng rng(1);
  const ComplexMatrix m = ginibre(2, 3, rng);
  const RealVector x = pack(m);
  CHECK(x.size() == 12);
  CHECK(x(1) == m(0, 1).real());
  CHECK(x(6 + 3) == m(1, 0).imag());
  CHECK((unpack(x, 2, 3) - m).norm() == 0.0);
}

TEST_CASE("coherent information gradient matches finite differences") {
  Rng rng(2);
  for (const KrausChannel& ch : {depolarizing(0.1), random_channel(3, 2, 3, 8)}) {
    const Objective f = detail::negative_coherent_information(ch);
    const std::size_t d = ch.dim_in();
    const RealVector x = pack(ginibre(d, d, rng));
    RealVector g;
    f(x, g);
    const RealVector fd = finite_difference_gradient(f, x, 1e-6);
    CHECK((g - fd).norm() < 1e-6 * std::max(1.0, fd.norm()));
  }
}

TEST_CASE("Holevo gradient matches finite differences") {
  Rng rng(3);
  const KrausChannel ch = random_channel(2, 3, 2, 4);
  const std::size_t m = 3;
  const Objective f = detail::negative_holevo(ch, m);
  RealVector x(m + 2 * 2 * m);
  x.head(m) = RealVector::Random(m);
  x.tail(2 * 2 * m) = pack(ginibre(2, m, rng));
  RealVector g;
  f(x, g);
  const RealVector fd = finite_difference_gradient(f, x, 1e-6);
  CHECK((g - fd).norm() < 1e-6 * std::max(1.0, fd.norm()));
}

TEST_CASE("softmax") {
  RealVector l(3);
  l << 1000, 1000, -1000;
  const RealVector p = detail::softmax(l);
  CHECK(p(0) == doctest::Approx(0.5));
  CHECK(p(2) == doctest::Approx(0.0));
}

TEST_CASE("optimizer reproduces the depolarizing closed form") {
  OptimizerOptions o;
  o.restarts = 4;
  const CapacityEstimate e = maximize_coherent_information(depolarizing(0.1), o);
  CHECK(e.value == doctest::Approx(depolarizing_ic_closed_form(0.1)).epsilon(1e-7));
  CHECK(e.value == doctest::Approx(0.3725081563).epsilon(1e-9));
  REQUIRE(e.argmax_state);
  CHECK(coherent_information(*e.argmax_state, depolarizing(0.1)) == doctest::Approx(e.value));
  CHECK(depolarizing_ic_closed_form(0.25) == 0.0);
}

TEST_CASE("optimizer is deterministic for a fixed seed") {
  OptimizerOptions o;
  o.restarts = 3;
  o.seed = 42;
  const KrausChannel ch = random_channel(3, 3, 2, 10);
  const CapacityEstimate a = maximize_coherent_information(ch, o);
  const CapacityEstimate b = maximize_coherent_information(ch, o);
  CHECK(a.value == b.value);
}

TEST_CASE("initial states are tried first") {
  OptimizerOptions o;
  o.restarts = 1;
  o.max_iters = 1;
  const DensityMatrix start[] = {DensityMatrix::maximally_mixed(2)};
  const CapacityEstimate e = maximize_coherent_information(identity_channel(2), o, start);
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(e.restarts_used == 2);
}

TEST_CASE("optimizer options are validated") {
  OptimizerOptions o;
  o.restarts = 0;
  CHECK_THROWS_AS(o.check(), Error);
  o = {};
  o.max_iters = 0;
  CHECK_THROWS_AS(o.check(), Error);
}

TEST_CASE("Holevo maximization of the identity") {
  OptimizerOptions o;
  o.restarts = 2;
  const CapacityEstimate e = maximize_holevo(identity_channel(2), 0, o);
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-7));
  REQUIRE(e.argmax_ensemble);
  CHECK_NOTHROW(e.argmax_ensemble->validate());
}

TEST_CASE("depolarizing threshold") {
  const double q = depolarizing_threshold();
  CHECK(q == doctest::Approx(0.18928962491523177).epsilon(1e-10));
  CHECK(std::abs(depolarizing_ic_closed_form(q)) < 1e-10);
}

TEST_CASE("repetition decoder: all-X leaves X on the data qubit") {
  const DecodedPattern all_x = repetition_decode(1, 1, 1);
  CHECK(all_x.syndrome == 0);
  CHECK(all_x.residual == 1);
  const DecodedPattern none = repetition_decode(0, 0, 0);
  CHECK(none.syndrome == 0);
  CHECK(none.residual == 0);
  // single X on the data qubit flips both parities and is corrected
  const DecodedPattern x3 = repetition_decode(0, 0, 1);
  CHECK(x3.syndrome == 3);
  CHECK(x3.residual == 0);
  const DecodedPattern z3 = repetition_decode(0, 0, 3);
  CHECK(z3.syndrome == 0);
  CHECK(z3.residual == 3);
}

TEST_CASE("syndrome table is a distribution") {
  for (double q : {0.0, 0.05, 0.19, 0.3}) {
    const SyndromeTable t = repetition_syndrome_table(q);
    CHECK_NOTHROW(t.validate());
  }
}

TEST_CASE("repetition formula against the brute-force oracle") {
  const std::pair<double, double> frozen[] = {
      {0.05, 0.6237698383222},          {0.15, 0.14897689298181943},
      {0.18, 0.03603385266151326},      {0.1893, 0.002915384111464199},
      {0.19, 0.0004559903775950974},    {0.2, -0.03418692942451189},
  };
  for (const auto& [q, total] : frozen) {
    CAPTURE(q);
    const RepetitionValue v = repetition_coherent_information(q);
    CHECK(v.total == doctest::Approx(total).epsilon(1e-10));
    CHECK(v.rate == doctest::Approx(total / 3));
    CHECK(std::abs(repetition_brute_force_oracle(q) - v.total) < 1e-10);
  }
}

TEST_CASE("multi-copy coherent information") {
  OptimizerOptions o;
  o.restarts = 2;
  const CapacityEstimate e = multi_copy_ic(depolarizing(0.1), 2, o);
  CHECK(e.value >= depolarizing_ic_closed_form(0.1) - 1e-7);
  CHECK_THROWS_AS(multi_copy_ic(depolarizing(0.1), 7, o), Error);
}

TEST_CASE("superactivation starting states") {
  const auto states = superactivation_initial_states();
  CHECK(states.size() == 4);
  for (const auto& s : states) CHECK(s.dim() == 16);
}

TEST_CASE("nonconvexity mixture and the two-shot expansion") {
  const KrausChannel m = nonconvexity_mixture(0.3);
  CHECK(m.dim_in() == 4);
  CHECK(m.dim_out() == 10);
  Rng rng(7);
  for (int t = 0; t < 3; ++t) {
    const double p = 0.2 + 0.3 * t;
    const TwoShotValues v = nonconvexity_two_shot(p, random_state(16, rng));
    CHECK(std::abs(v.direct - v.expansion) < 1e-9);
  }
}
