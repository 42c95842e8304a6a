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

#ifndef LEVELSTEP_PROBLEMS_GENERATE_HPP_
#define LEVELSTEP_PROBLEMS_GENERATE_HPP_

#include <cstdint>
#include <stdexcept>

#include "levelstep/problems/gap.hpp"
#include "levelstep/problems/l1.hpp"
#include "levelstep/problems/transport.hpp"
#include "levelstep/rng.hpp"

namespace levelstep {

// Entries of A uniform in [-1, 1], b = 0: the minimum is 0 at the origin.
inline L1Instance generate_l1(std::size_t rows, std::size_t cols,
                              std::uint64_t seed) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("generate_l1: empty shape");
  }
  L1Instance inst;
  inst.seed = seed;
  inst.a = Matrix(rows, cols);
  Rng rng(seed);
  for (std::size_t m = 0; m < rows; ++m) {
    for (std::size_t j = 0; j < cols; ++j) inst.a(m, j) = rng.uniform(-1, 1);
  }
  inst.b.assign(rows, 0.0);
  inst.known_fstar = 0.0;
  inst.known_xstar = DenseVector(cols, 0.0);
  return inst;
}

namespace detail {

// Jobs greedily placed on the machine that keeps the makespan lowest; the
// resulting loads give a capacity vector that is feasible by construction.
inline DenseVector balanced_loads(const Matrix& time) {
  DenseVector load(time.cols, 0.0);
  for (std::size_t j = 0; j < time.rows; ++j) {
    std::size_t pick = 0;
    for (std::size_t m = 1; m < time.cols; ++m) {
      if (load[m] + time(j, m) < load[pick] + time(j, pick)) pick = m;
    }
    load[pick] += time(j, pick);
  }
  return load;
}

}  // namespace detail

// Times uniform in [5, 25] and costs anti-correlated with them (fast
// machines are expensive), capacities rho * column-average load with
// rho in [0.6, 0.9].  Two touch-ups keep the dual usable:
//   - capacities are floored at 1.02x the loads of a balanced assignment,
//     so the primal stays feasible and the dual bounded;
//   - if the cost-greedy assignment happens to fit the capacities (x = 0
//     would already be dual-optimal) the whole draw is retried with a
//     perturbed seed.
// For one or two machines the dual optimum found by grid search is attached.
inline GapDualInstance generate_gap(std::size_t machines, std::size_t jobs,
                                    std::uint64_t seed,
                                    bool attach_optimum = true) {
  if (machines == 0 || jobs == 0) {
    throw std::invalid_argument("generate_gap: empty shape");
  }
  for (std::uint64_t attempt = 0;; ++attempt) {
    if (attempt == 64) {
      throw std::runtime_error("generate_gap: no usable draw in 64 attempts");
    }
    Rng rng(seed + 0x9E3779B97F4A7C15ull * attempt);
    GapDualInstance inst;
    inst.seed = seed;
    inst.cost = Matrix(jobs, machines);
    inst.time = Matrix(jobs, machines);
    for (std::size_t j = 0; j < jobs; ++j) {
      for (std::size_t m = 0; m < machines; ++m) {
        inst.time(j, m) = rng.uniform(5, 25);
        inst.cost(j, m) = 30.0 - inst.time(j, m) + rng.uniform(0, 10);
      }
    }
    inst.capacity.resize(machines);
    for (std::size_t m = 0; m < machines; ++m) {
      double column = 0.0;
      for (std::size_t j = 0; j < jobs; ++j) column += inst.time(j, m);
      inst.capacity[m] =
          rng.uniform(0.6, 0.9) * column / static_cast<double>(machines);
    }
    const DenseVector balanced = detail::balanced_loads(inst.time);
    for (std::size_t m = 0; m < machines; ++m) {
      inst.capacity[m] = std::max(inst.capacity[m], 1.02 * balanced[m]);
    }

    DenseVector greedy_load(machines, 0.0);
    for (std::size_t j = 0; j < jobs; ++j) {
      std::size_t pick = 0;
      for (std::size_t m = 1; m < machines; ++m) {
        if (inst.cost(j, m) < inst.cost(j, pick)) pick = m;
      }
      greedy_load[pick] += inst.time(j, pick);
    }
    bool binding = false;
    for (std::size_t m = 0; m < machines; ++m) {
      binding = binding || greedy_load[m] > inst.capacity[m];
    }
    if (!binding) continue;

    if (attach_optimum && machines <= 2) {
      const GridOptimum opt = gap_dual_grid_optimum(inst);
      inst.known_fstar = opt.value;
      inst.known_xstar = opt.x;
    }
    return inst;
  }
}

// Same calibration idea with operation chains: times/costs as above,
// transfer costs uniform in [1, 6] off the diagonal.  Capacity floor uses a
// per-operation balanced placement; a draw whose zero-multiplier plans fit
// the capacities is retried.
inline TransportAssignInstance generate_transport(
    std::size_t machines, std::size_t jobs, std::size_t ops,
    std::uint64_t seed, std::size_t group_size = 1) {
  if (machines == 0 || jobs == 0 || ops == 0) {
    throw std::invalid_argument("generate_transport: empty shape");
  }
  for (std::uint64_t attempt = 0;; ++attempt) {
    if (attempt == 64) {
      throw std::runtime_error(
          "generate_transport: no usable draw in 64 attempts");
    }
    Rng rng(seed + 0x9E3779B97F4A7C15ull * attempt);
    TransportAssignInstance inst;
    inst.machines = machines;
    inst.group_size = group_size;
    inst.seed = seed;
    inst.cost.assign(jobs, std::vector<DenseVector>(ops, DenseVector(machines)));
    inst.time.assign(jobs, std::vector<DenseVector>(ops, DenseVector(machines)));
    for (std::size_t i = 0; i < jobs; ++i) {
      for (std::size_t j = 0; j < ops; ++j) {
        for (std::size_t m = 0; m < machines; ++m) {
          inst.time[i][j][m] = rng.uniform(5, 25);
          inst.cost[i][j][m] = 30.0 - inst.time[i][j][m] + rng.uniform(0, 10);
        }
      }
    }
    inst.transfer.assign(jobs,
                         std::vector<DenseVector>(machines,
                                                  DenseVector(machines, 0.0)));
    for (std::size_t i = 0; i < jobs; ++i) {
      for (std::size_t m1 = 0; m1 < machines; ++m1) {
        for (std::size_t m2 = 0; m2 < machines; ++m2) {
          if (m1 != m2) inst.transfer[i][m1][m2] = rng.uniform(1, 6);
        }
      }
    }

    DenseVector balanced(machines, 0.0);
    double total_time = 0.0;
    for (std::size_t i = 0; i < jobs; ++i) {
      for (std::size_t j = 0; j < ops; ++j) {
        std::size_t pick = 0;
        for (std::size_t m = 1; m < machines; ++m) {
          if (balanced[m] + inst.time[i][j][m] <
              balanced[pick] + inst.time[i][j][pick]) {
            pick = m;
          }
        }
        balanced[pick] += inst.time[i][j][pick];
        for (std::size_t m = 0; m < machines; ++m) {
          total_time += inst.time[i][j][m];
        }
      }
    }
    // Even-split share per machine: (jobs*ops/machines) * mean time.
    inst.capacity.resize(machines);
    for (std::size_t m = 0; m < machines; ++m) {
      inst.capacity[m] =
          std::max(rng.uniform(0.6, 0.9) * total_time /
                       static_cast<double>(machines * machines),
                   1.02 * balanced[m]);
    }

    const SubgradientReport at_zero =
        transport_dual_exact(inst, DenseVector(machines, 0.0));
    bool binding = false;
    for (double g : at_zero.gradient) binding = binding || g > 0.0;
    if (!binding) continue;
    return inst;
  }
}

}  // namespace levelstep

#endif  // LEVELSTEP_PROBLEMS_GENERATE_HPP_
