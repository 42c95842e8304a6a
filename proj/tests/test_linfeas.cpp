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

#include <catch2/catch_amalgamated.hpp>

#include "levelstep/linfeas.hpp"
#include "levelstep/rng.hpp"
#include "support/test_oracles.hpp"

using namespace levelstep;

namespace {

double witness_violation(const std::vector<Cut>& cuts, const DenseVector& w) {
  return testsupport::max_violation(cuts, w);
}

}  // namespace

TEST_CASE("empty system is feasible") {
  const auto v = check_feasible({}, 2, FeasibleRegionSpec::unconstrained());
  REQUIRE(v.feasible);
  CHECK(v.witness == DenseVector{0.0, 0.0});
}

TEST_CASE("one dimensional interval") {
  // x <= -1 and -x <= -2 (x >= 2) cannot both hold.
  const std::vector<Cut> conflict = {{{1.0}, -1.0}, {{-1.0}, -2.0}};
  CHECK_FALSE(check_feasible(conflict, 1).feasible);

  // x <= 3 and x >= 2 admit a point.
  const std::vector<Cut> ok = {{{1.0}, 3.0}, {{-1.0}, -2.0}};
  const auto v = check_feasible(ok, 1);
  REQUIRE(v.feasible);
  CHECK(witness_violation(ok, v.witness) <= kDefaultFeasTol);
}

TEST_CASE("zero normal rows resolve by sign of the rhs") {
  CHECK(check_feasible({{{0.0, 0.0}, 1.0}}, 2).feasible);
  CHECK(check_feasible({{{0.0, 0.0}, 0.0}}, 2).feasible);
  CHECK_FALSE(check_feasible({{{0.0, 0.0}, -1.0}}, 2).feasible);
}

TEST_CASE("domain constraints participate") {
  // x <= -1 alone is feasible, but not inside the nonnegative orthant.
  const std::vector<Cut> cuts = {{{1.0, 0.0}, -1.0}};
  CHECK(check_feasible(cuts, 2, FeasibleRegionSpec::unconstrained()).feasible);
  CHECK_FALSE(
      check_feasible(cuts, 2, FeasibleRegionSpec::nonnegative()).feasible);

  const auto box = FeasibleRegionSpec::box({0.0, 0.0}, {1.0, 1.0});
  // Requires x1 + x2 >= 3, impossible inside the unit box.
  CHECK_FALSE(check_feasible({{{-1.0, -1.0}, -3.0}}, 2, box).feasible);
  const auto v = check_feasible({{{-1.0, -1.0}, -1.0}}, 2, box);
  REQUIRE(v.feasible);
  CHECK(v.witness[0] >= 0.0);
  CHECK(v.witness[0] <= 1.0);
  CHECK(v.witness[1] >= 0.0);
  CHECK(v.witness[1] <= 1.0);
}

TEST_CASE("witness respects the nonnegative domain") {
  const std::vector<Cut> cuts = {{{-1.0, -1.0}, -5.0}};  // x1 + x2 >= 5
  const auto v = check_feasible(cuts, 2, FeasibleRegionSpec::nonnegative());
  REQUIRE(v.feasible);
  CHECK(v.witness[0] >= 0.0);
  CHECK(v.witness[1] >= 0.0);
  CHECK(witness_violation(cuts, v.witness) <= kDefaultFeasTol);
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS_AS(check_feasible({{{1.0}, 0.0}}, 2), std::invalid_argument);
}

TEST_CASE("verdicts match the planar brute-force oracle") {
  Rng rng(2024);
  int feas = 0, infeas = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t ncuts = 1 + rng.uniform_index(6);
    std::vector<Cut> cuts;
    const bool anchored = trial % 2 == 0;
    DenseVector anchor = rng.uniform_vector(2, -2.0, 2.0);
    for (std::size_t i = 0; i < ncuts; ++i) {
      DenseVector a = rng.uniform_vector(2, -1.0, 1.0);
      double rhs;
      if (anchored) {
        rhs = dot(a, anchor) + rng.uniform(0.05, 1.0);
      } else {
        rhs = rng.uniform(-1.0, 1.0);
      }
      cuts.push_back({a, rhs});
    }
    const bool expected = testsupport::halfplanes_feasible_2d(cuts);
    const auto got = check_feasible(cuts, 2);
    INFO("trial " << trial << " anchored=" << anchored);
    REQUIRE(got.feasible == expected);
    if (anchored) REQUIRE(expected);
    if (got.feasible) {
      REQUIRE(witness_violation(cuts, got.witness) <= kDefaultFeasTol);
      ++feas;
    } else {
      ++infeas;
    }
  }
  // Both outcomes must actually be exercised (this seed yields 29 empty
  // systems among the unanchored half).
  CHECK(feas >= 150);
  CHECK(infeas >= 25);
}

TEST_CASE("redundant and duplicated cuts do not confuse the solver") {
  std::vector<Cut> cuts = {{{1.0, 0.0}, 1.0},
                           {{1.0, 0.0}, 1.0},
                           {{2.0, 0.0}, 2.0},
                           {{0.0, 1.0}, 0.5}};
  const auto v = check_feasible(cuts, 2);
  REQUIRE(v.feasible);
  CHECK(witness_violation(cuts, v.witness) <= kDefaultFeasTol);

  cuts.push_back({{-1.0, 0.0}, -2.0});  // x1 >= 2 contradicts x1 <= 1
  CHECK_FALSE(check_feasible(cuts, 2).feasible);
}

TEST_CASE("larger dimension sanity") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t dim = 5 + rng.uniform_index(10);
    DenseVector anchor = rng.uniform_vector(dim, -1.0, 1.0);
    std::vector<Cut> cuts;
    for (std::size_t i = 0; i < dim + 3; ++i) {
      DenseVector a = rng.uniform_vector(dim, -1.0, 1.0);
      cuts.push_back({a, dot(a, anchor) + rng.uniform(0.01, 0.5)});
    }
    const auto v = check_feasible(cuts, dim);
    REQUIRE(v.feasible);
    REQUIRE(witness_violation(cuts, v.witness) <= kDefaultFeasTol);
  }
}
