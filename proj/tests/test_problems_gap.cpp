// Copyright 2026 The levelstep Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "levelstep/problems/gap.hpp"
#include "levelstep/problems/generate.hpp"
#include "levelstep/rng.hpp"
#include "support/test_oracles.hpp"

using namespace levelstep;

namespace {

GapDualInstance one_job() {
  GapDualInstance inst;
  inst.cost = Matrix(1, 2);
  inst.cost.data = {1.0, 2.0};
  inst.time = Matrix(1, 2);
  inst.time.data = {1.0, 1.0};
  inst.capacity = {0.0, 0.0};
  return inst;
}

}  // namespace

TEST_CASE("dual value and supergradient on a one-job instance") {
  const auto inst = one_job();
  // At x = (5, 0): machine prices are 1 + 5 = 6 and 2 + 0 = 2, so the job
  // lands on machine 1; value = 2 - x . capacity = 2, load = (0, 1).
  auto rep = gap_dual_exact(inst, {5.0, 0.0});
  CHECK(rep.value == 2.0);
  CHECK(rep.gradient == DenseVector{0.0, 1.0});

  // At x = 0 machine 0 is cheaper.
  rep = gap_dual_exact(inst, {0.0, 0.0});
  CHECK(rep.value == 1.0);
  CHECK(rep.gradient == DenseVector{1.0, 0.0});
}

TEST_CASE("inner argmin ties break to the lowest machine index") {
  GapDualInstance inst = one_job();
  inst.cost.data = {2.0, 2.0};  // identical prices at x = 0
  const auto rep = gap_dual_exact(inst, {0.0, 0.0});
  CHECK(rep.gradient == DenseVector{1.0, 0.0});
}

TEST_CASE("dual value agrees with full assignment enumeration") {
  const auto inst = generate_gap(2, 5, 31, false);
  Rng rng(8);
  for (int i = 0; i < 25; ++i) {
    const DenseVector x = rng.uniform_vector(2, 0.0, 4.0);
    const double lib = gap_dual_exact(inst, x).value;
    const double brute = testsupport::enumerate_gap_dual(inst, x);
    CHECK(std::abs(lib - brute) <= 1e-9 * std::max(1.0, std::abs(brute)));
  }
}

TEST_CASE("weak duality against the enumerated primal optimum") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const auto inst = generate_gap(2, 4, seed, false);
    const auto primal = testsupport::enumerate_gap_primal(inst);
    REQUIRE(primal.has_value());  // the generator keeps instances feasible
    Rng rng(seed + 100);
    for (int i = 0; i < 20; ++i) {
      const DenseVector x = rng.uniform_vector(2, 0.0, 5.0);
      CHECK(gap_dual_exact(inst, x).value <= *primal + 1e-9);
    }
  }
}

TEST_CASE("grid search returns a consistent near-maximal pair") {
  const auto inst = generate_gap(2, 6, 17, false);
  const auto opt = gap_dual_grid_optimum(inst);
  // The reported value must be the dual evaluated at the reported point.
  CHECK(opt.value == gap_dual_exact(inst, opt.x).value);
  CHECK(opt.x[0] >= 0.0);
  CHECK(opt.x[1] >= 0.0);
  // No sampled point may beat it.
  Rng rng(99);
  for (int i = 0; i < 400; ++i) {
    const DenseVector x = rng.uniform_vector(2, 0.0, 8.0);
    CHECK(gap_dual_exact(inst, x).value <= opt.value + 0.05);
  }
  // And it must dominate the enumerated primal lower bound region:
  // q(x*) <= primal optimum (weak duality) keeps the value sane.
  const auto primal = testsupport::enumerate_gap_primal(inst);
  REQUIRE(primal.has_value());
  CHECK(opt.value <= *primal + 1e-9);
}

TEST_CASE("generated instances are deterministic, feasible, and dual-active") {
  const auto a = generate_gap(2, 8, 5);
  const auto b = generate_gap(2, 8, 5);
  CHECK(a.cost.data == b.cost.data);
  CHECK(a.time.data == b.time.data);
  CHECK(a.capacity == b.capacity);

  // Capacities admit at least one assignment...
  CHECK(testsupport::enumerate_gap_primal(a).has_value());
  // ...but the unconstrained cost-greedy one must overload some machine,
  // otherwise x = 0 would already be dual-optimal.
  DenseVector greedy_load(a.machines(), 0.0);
  for (std::size_t j = 0; j < a.jobs(); ++j) {
    std::size_t pick = 0;
    for (std::size_t m = 1; m < a.machines(); ++m) {
      if (a.cost(j, m) < a.cost(j, pick)) pick = m;
    }
    greedy_load[pick] += a.time(j, pick);
  }
  bool overloaded = false;
  for (std::size_t m = 0; m < a.machines(); ++m) {
    overloaded = overloaded || greedy_load[m] > a.capacity[m];
  }
  CHECK(overloaded);

  // With attach_optimum the known value matches a fresh grid search.
  REQUIRE(a.known_fstar.has_value());
  REQUIRE(a.known_xstar.has_value());
  const auto opt = gap_dual_grid_optimum(a);
  CHECK(*a.known_fstar == opt.value);
  CHECK(*a.known_xstar == opt.x);
}

TEST_CASE("instance validation") {
  GapDualInstance inst = one_job();
  inst.capacity.pop_back();
  CHECK_THROWS_AS(validate(inst), std::invalid_argument);
  CHECK_THROWS_AS(gap_dual_exact(one_job(), {1.0}), std::invalid_argument);
  GapDualInstance big;
  big.cost = Matrix(1, 3);
  big.cost.data = {1.0, 2.0, 3.0};
  big.time = big.cost;
  big.capacity = {1.0, 1.0, 1.0};
  CHECK_THROWS_AS(gap_dual_grid_optimum(big), std::invalid_argument);
}
