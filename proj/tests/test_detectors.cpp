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

#include "levelstep/detectors.hpp"
#include "levelstep/levels.hpp"
#include "levelstep/rng.hpp"

using namespace levelstep;

TEST_CASE("stepsize violation cut on hand values") {
  // x = (1, 2), g = (2, -1), s = 0.5, upper scaling 1.
  // rhs = g.x - (s/1)*|g|^2 = (2 - 2) - 0.5*5 = -2.5.
  const Cut c = psvd_cut({1.0, 2.0}, {2.0, -1.0}, 0.5, 1.0);
  CHECK(c.normal == DenseVector{2.0, -1.0});
  CHECK(c.rhs == -2.5);

  // Doubling the upper scaling halves the offset: rhs = 0 - 0.25*5.
  CHECK(psvd_cut({1.0, 2.0}, {2.0, -1.0}, 0.5, 2.0).rhs == -1.25);

  CHECK_THROWS_AS(psvd_cut({1.0}, {0.0}, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(psvd_cut({1.0}, {1.0}, -0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(psvd_cut({1.0}, {1.0}, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("divergence cut linearization on hand values") {
  // prev = (1, 0), next = (0, 1): normal = 2(prev - next) = (2, -2),
  // rhs = |prev|^2 - |next|^2 = 0. The cut keeps points nearer to next.
  const auto c = sdd_cut({1.0, 0.0}, {0.0, 1.0});
  REQUIRE(c.has_value());
  CHECK(c->normal == DenseVector{2.0, -2.0});
  CHECK(c->rhs == 0.0);

  // Midpoints of the segment satisfy it with equality; next strictly.
  CHECK(dot(c->normal, DenseVector{0.5, 0.5}) == c->rhs);
  CHECK(dot(c->normal, DenseVector{0.0, 1.0}) < c->rhs);

  CHECK_FALSE(sdd_cut({1.0, 2.0}, {1.0, 2.0}).has_value());
}

TEST_CASE("window accumulates and tests cuts") {
  DetectorWindow w(DetectorKind::Psvd, 1);
  w.reset(0);
  CHECK(w.cut_count() == 0);
  CHECK(w.test().feasible);

  w.append_psvd({1.0}, {1.0}, 1.0, 1.0);   // y <= 0
  CHECK(w.cut_count() == 1);
  CHECK(w.test().feasible);
  w.append_psvd({0.0}, {1.0}, 0.5, 1.0);   // y <= -0.5 folds into the row above
  CHECK(w.cut_count() == 1);
  CHECK(w.cuts()[0].rhs == -0.5);
  CHECK(w.test().feasible);
  w.append_psvd({-0.5}, {-1.0}, 0.75, 1.0);  // -y <= -0.25, i.e. y >= 0.25
  CHECK(w.cut_count() == 2);
  CHECK_FALSE(w.test().feasible);

  w.reset(3);
  CHECK(w.cut_count() == 0);
  CHECK(w.start_iter() == 3);
  CHECK(w.test().feasible);
}

TEST_CASE("window rejects zero-normal cuts that are unsatisfiable") {
  DetectorWindow w(DetectorKind::Psvd, 2);
  w.reset(0);
  w.append({{0.0, 0.0}, 0.5});  // vacuous, dropped
  CHECK(w.cut_count() == 0);
  CHECK_THROWS_AS(w.append({{0.0, 0.0}, -0.5}), std::invalid_argument);
}

TEST_CASE("divergence window needs a starting point") {
  DetectorWindow w(DetectorKind::Sdd, 2);
  w.reset(0);
  CHECK_THROWS_AS(w.append_sdd({1.0, 1.0}), std::logic_error);
  w.reset(0, {0.0, 0.0});
  w.append_sdd({1.0, 1.0});
  CHECK(w.cut_count() == 1);
  // Stationary pair adds nothing.
  w.append_sdd({1.0, 1.0});
  CHECK(w.cut_count() == 1);
}

TEST_CASE("divergence window only supports free domains") {
  CHECK_THROWS_AS(
      DetectorWindow(DetectorKind::Sdd, 2, FeasibleRegionSpec::nonnegative()),
      std::invalid_argument);
}

TEST_CASE("window domain participates in feasibility") {
  DetectorWindow w(DetectorKind::Psvd, 2, FeasibleRegionSpec::nonnegative());
  w.reset(0);
  w.append({{1.0, 1.0}, -1.0});  // x1 + x2 <= -1, empty inside the orthant
  CHECK_FALSE(w.test().feasible);

  DetectorWindow free_w(DetectorKind::Psvd, 2);
  free_w.reset(0);
  free_w.append({{1.0, 1.0}, -1.0});
  CHECK(free_w.test().feasible);
}

namespace {

// Polyak-style trajectory at a fixed level on a synthetic convex function;
// both detector systems are rebuilt after every iteration and compared.
struct TrajectoryOutcome {
  long psvd_first = -1;
  long sdd_first = -1;
  bool dominance_held = true;
};

TrajectoryOutcome drive_detectors(std::uint64_t seed, std::size_t dim,
                                  std::size_t steps) {
  Rng rng(seed);
  // f(x) = max_i a_i . x + c_i.  The +/- unit slopes bound it below by
  // ||x||_inf, so every trajectory stays confined; the remaining pieces are
  // random tilts.
  std::vector<DenseVector> slopes;
  DenseVector offsets;
  for (std::size_t i = 0; i < dim; ++i) {
    for (double sign : {1.0, -1.0}) {
      DenseVector unit(dim, 0.0);
      unit[i] = sign;
      slopes.push_back(std::move(unit));
      offsets.push_back(rng.uniform(0.0, 1.0));
    }
  }
  for (std::size_t p = 0; p < dim + 1; ++p) {
    slopes.push_back(rng.uniform_vector(dim, -1.0, 1.0));
    offsets.push_back(rng.uniform(0.0, 1.0));
  }
  const std::size_t pieces = slopes.size();
  const auto eval = [&](const DenseVector& x) {
    std::size_t arg = 0;
    double best = dot(slopes[0], x) + offsets[0];
    for (std::size_t p = 1; p < pieces; ++p) {
      const double v = dot(slopes[p], x) + offsets[p];
      if (v > best) {
        best = v;
        arg = p;
      }
    }
    return std::pair<double, std::size_t>(best, arg);
  };

  const double gamma = 0.5, gamma_bar = 1.0;
  const double level = -100.0;  // held fixed, far below the minimum
  DenseVector x = rng.uniform_vector(dim, -5.0, 5.0);

  DetectorWindow psvd(DetectorKind::Psvd, dim);
  DetectorWindow sdd(DetectorKind::Sdd, dim);
  psvd.reset(0);
  sdd.reset(0, x);

  TrajectoryOutcome out;
  for (std::size_t k = 0; k < steps; ++k) {
    const auto [value, piece] = eval(x);
    const DenseVector& g = slopes[piece];
    const double g2 = norm_sq(g);
    if (g2 == 0.0) break;
    const double s = polyak_step(value, level, g2, gamma);
    const DenseVector x_next = axpy(x, -s, g);

    psvd.append_psvd(x, g, s, gamma_bar);
    sdd.append_sdd(x_next);

    const bool psvd_infeasible = !psvd.test().feasible;
    const bool sdd_infeasible = !sdd.test().feasible;
    if (psvd_infeasible && out.psvd_first < 0) {
      out.psvd_first = static_cast<long>(k);
    }
    if (sdd_infeasible && out.sdd_first < 0) {
      out.sdd_first = static_cast<long>(k);
    }
    if (sdd_infeasible && !psvd_infeasible) out.dominance_held = false;
    if (out.psvd_first >= 0 && out.sdd_first >= 0) break;
    x = x_next;
  }
  return out;
}

}  // namespace

TEST_CASE("violation detector is at least as tight as the divergence one") {
  int psvd_triggered = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto out = drive_detectors(900 + seed, 3, 80);
    INFO("seed " << seed << " psvd_first=" << out.psvd_first
                 << " sdd_first=" << out.sdd_first);
    CHECK(out.dominance_held);
    if (out.psvd_first >= 0) ++psvd_triggered;
    if (out.sdd_first >= 0) {
      REQUIRE(out.psvd_first >= 0);
      CHECK(out.psvd_first <= out.sdd_first);
    }
  }
  // The tighter detector should actually fire on these deep-level runs.
  CHECK(psvd_triggered >= 20);
}
