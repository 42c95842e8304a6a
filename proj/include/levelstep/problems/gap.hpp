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

#ifndef LEVELSTEP_PROBLEMS_GAP_HPP_
#define LEVELSTEP_PROBLEMS_GAP_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "levelstep/core.hpp"

namespace levelstep {

// Lagrangian dual of the generalized assignment problem
//   min sum_j c[j][m(j)]  s.t. per-machine load <= capacity,
// with the capacity constraints priced by multipliers x >= 0:
//   q(x) = sum_j min_m (c[j][m] + x[m] t[j][m]) - x . capacity.
// Native sense: Maximize (q is concave, q(x) lower-bounds the primal).
struct GapDualInstance {
  Matrix cost;          // jobs x machines
  Matrix time;          // jobs x machines
  DenseVector capacity; // machines

  std::uint64_t seed = 0;
  std::optional<double> known_fstar;        // native (max) sense
  std::optional<DenseVector> known_xstar;

  std::size_t jobs() const { return cost.rows; }
  std::size_t machines() const { return cost.cols; }
};

inline void validate(const GapDualInstance& inst) {
  if (inst.cost.rows == 0 || inst.cost.cols == 0) {
    throw std::invalid_argument("GapDualInstance: empty cost matrix");
  }
  if (inst.time.rows != inst.cost.rows || inst.time.cols != inst.cost.cols) {
    throw std::invalid_argument("GapDualInstance: cost/time shape mismatch");
  }
  if (inst.capacity.size() != inst.cost.cols) {
    throw std::invalid_argument("GapDualInstance: capacity length mismatch");
  }
}

// Exact dual value and supergradient (load minus capacity of the inner
// minimizer).  Ties in the inner argmin go to the lowest machine index.
inline SubgradientReport gap_dual_exact(const GapDualInstance& inst,
                                        const DenseVector& x) {
  if (x.size() != inst.machines()) {
    throw std::invalid_argument("gap_dual_exact: dimension mismatch");
  }
  SubgradientReport rep;
  rep.exact = true;
  DenseVector load(inst.machines(), 0.0);
  double assigned = 0.0;
  for (std::size_t j = 0; j < inst.jobs(); ++j) {
    std::size_t pick = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < inst.machines(); ++m) {
      const double v = inst.cost(j, m) + x[m] * inst.time(j, m);
      if (v < best) {
        best = v;
        pick = m;
      }
    }
    assigned += best;
    load[pick] += inst.time(j, pick);
  }
  rep.value = assigned - dot(x, inst.capacity);
  rep.gradient.resize(inst.machines());
  for (std::size_t m = 0; m < inst.machines(); ++m) {
    rep.gradient[m] = load[m] - inst.capacity[m];
  }
  return rep;
}

struct GridOptimum {
  DenseVector x;
  double value = 0.0;
};

// Box search for the dual maximizer over x >= 0, for one or two machines:
// a coarse sweep (expanding the box while the argmax sits on its boundary)
// followed by two local refinements.  Returns a consistent (point, value)
// pair; by concavity the true optimum exceeds it by at most a Lipschitz
// multiple of the final pitch.
inline GridOptimum gap_dual_grid_optimum(const GapDualInstance& inst,
                                         double coarse_pitch = 1e-2,
                                         double final_pitch = 1e-4) {
  validate(inst);
  const std::size_t dim = inst.machines();
  if (dim == 0 || dim > 2) {
    throw std::invalid_argument(
        "gap_dual_grid_optimum: implemented for 1 or 2 machines");
  }
  if (!(coarse_pitch > 0.0) || !(final_pitch > 0.0) ||
      final_pitch > coarse_pitch) {
    throw std::invalid_argument("gap_dual_grid_optimum: bad pitches");
  }

  auto value_at = [&](const DenseVector& x) {
    return gap_dual_exact(inst, x).value;
  };

  auto sweep = [&](const DenseVector& lo, const DenseVector& hi,
                   double pitch) {
    GridOptimum best{lo, -std::numeric_limits<double>::infinity()};
    DenseVector x(dim, 0.0);
    const long n0 = std::lround((hi[0] - lo[0]) / pitch);
    const long n1 = dim == 2 ? std::lround((hi[1] - lo[1]) / pitch) : 0;
    for (long i = 0; i <= n0; ++i) {
      x[0] = lo[0] + pitch * static_cast<double>(i);
      for (long j = 0; j <= n1; ++j) {
        if (dim == 2) x[1] = lo[1] + pitch * static_cast<double>(j);
        const double v = value_at(x);
        if (v > best.value) {
          best.value = v;
          best.x = x;
        }
      }
    }
    return best;
  };

  double extent = 5.12;  // 512 coarse cells; doubled while the edge wins
  double pitch = coarse_pitch;
  GridOptimum best;
  for (int rounds = 0; rounds < 16; ++rounds) {
    pitch = coarse_pitch * (extent / 5.12);
    best = sweep(DenseVector(dim, 0.0), DenseVector(dim, extent), pitch);
    bool on_edge = false;
    for (double c : best.x) on_edge = on_edge || c >= extent - pitch;
    if (!on_edge) break;
    extent *= 2.0;
  }

  while (pitch > final_pitch * 1.001) {
    const double next = std::max(final_pitch, pitch / 10.0);
    DenseVector lo(dim), hi(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      lo[d] = std::max(0.0, best.x[d] - 2.0 * pitch);
      hi[d] = best.x[d] + 2.0 * pitch;
    }
    const GridOptimum refined = sweep(lo, hi, next);
    if (refined.value > best.value) best = refined;
    pitch = next;
  }
  return best;
}

}  // namespace levelstep

#endif  // LEVELSTEP_PROBLEMS_GAP_HPP_
