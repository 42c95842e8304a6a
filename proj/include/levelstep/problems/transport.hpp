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

#ifndef LEVELSTEP_PROBLEMS_TRANSPORT_HPP_
#define LEVELSTEP_PROBLEMS_TRANSPORT_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "levelstep/core.hpp"

namespace levelstep {

// Machine assignment with sequence-dependent transfer costs: every job is a
// chain of operations, each operation runs on one machine, and moving a job
// between machines m1 -> m2 costs transfer[job][m1][m2] on top of the
// per-operation assignment costs.  Machine capacities couple the jobs; the
// dual prices them with multipliers x >= 0:
//   q(x) = sum_i min_seq ( cost(seq) + x . load(seq) ) - x . capacity.
// Native sense: Maximize.
struct TransportAssignInstance {
  std::size_t machines = 0;
  // cost[i][j][m], time[i][j][m]: job i, operation j, machine m.
  std::vector<std::vector<DenseVector>> cost;
  std::vector<std::vector<DenseVector>> time;
  // transfer[i][m1][m2]; zero diagonal.
  std::vector<std::vector<DenseVector>> transfer;
  DenseVector capacity;  // machines
  std::size_t group_size = 1;

  std::uint64_t seed = 0;
  std::optional<double> known_fstar;  // native (max) sense

  std::size_t jobs() const { return cost.size(); }
  std::size_t ops(std::size_t job) const { return cost[job].size(); }
};

inline void validate(const TransportAssignInstance& inst) {
  if (inst.machines == 0) {
    throw std::invalid_argument("TransportAssignInstance: no machines");
  }
  if (inst.jobs() == 0 || inst.time.size() != inst.jobs() ||
      inst.transfer.size() != inst.jobs()) {
    throw std::invalid_argument("TransportAssignInstance: job arrays differ");
  }
  if (inst.capacity.size() != inst.machines) {
    throw std::invalid_argument("TransportAssignInstance: capacity length");
  }
  for (std::size_t i = 0; i < inst.jobs(); ++i) {
    if (inst.cost[i].empty() || inst.time[i].size() != inst.cost[i].size()) {
      throw std::invalid_argument("TransportAssignInstance: op arrays differ");
    }
    for (std::size_t j = 0; j < inst.ops(i); ++j) {
      if (inst.cost[i][j].size() != inst.machines ||
          inst.time[i][j].size() != inst.machines) {
        throw std::invalid_argument("TransportAssignInstance: machine arrays");
      }
    }
    if (inst.transfer[i].size() != inst.machines) {
      throw std::invalid_argument("TransportAssignInstance: transfer shape");
    }
    for (const DenseVector& row : inst.transfer[i]) {
      if (row.size() != inst.machines) {
        throw std::invalid_argument("TransportAssignInstance: transfer shape");
      }
    }
  }
}

// One job's chosen machine chain with its multiplier-independent pieces:
// evaluating the chain at any x is base_cost + x . load.
struct JobPlan {
  std::vector<std::size_t> sequence;
  double base_cost = 0.0;
  DenseVector load;
};

inline JobPlan plan_from_sequence(const TransportAssignInstance& inst,
                                  std::size_t job,
                                  std::vector<std::size_t> seq) {
  JobPlan plan;
  plan.load.assign(inst.machines, 0.0);
  for (std::size_t j = 0; j < seq.size(); ++j) {
    plan.base_cost += inst.cost[job][j][seq[j]];
    plan.load[seq[j]] += inst.time[job][j][seq[j]];
  }
  for (std::size_t j = 0; j + 1 < seq.size(); ++j) {
    plan.base_cost += inst.transfer[job][seq[j]][seq[j + 1]];
  }
  plan.sequence = std::move(seq);
  return plan;
}

inline double plan_value(const JobPlan& plan, const DenseVector& x) {
  return plan.base_cost + dot(x, plan.load);
}

// Layered shortest path over (operation, machine) nodes: node cost
// c + x[m] t, edge cost transfer[m][m'].  Ties break to the lowest machine
// index, front to back.
inline JobPlan transport_best_plan(const TransportAssignInstance& inst,
                                   std::size_t job, const DenseVector& x) {
  const std::size_t nops = inst.ops(job);
  const std::size_t nm = inst.machines;
  std::vector<double> dist(nm);
  std::vector<std::vector<std::size_t>> parent(nops,
                                               std::vector<std::size_t>(nm, 0));
  for (std::size_t m = 0; m < nm; ++m) {
    dist[m] = inst.cost[job][0][m] + x[m] * inst.time[job][0][m];
  }
  std::vector<double> next(nm);
  for (std::size_t j = 1; j < nops; ++j) {
    for (std::size_t m = 0; m < nm; ++m) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t arg = 0;
      for (std::size_t p = 0; p < nm; ++p) {
        const double v = dist[p] + inst.transfer[job][p][m];
        if (v < best) {
          best = v;
          arg = p;
        }
      }
      parent[j][m] = arg;
      next[m] = best + inst.cost[job][j][m] + x[m] * inst.time[job][j][m];
    }
    dist.swap(next);
  }
  std::size_t tail = 0;
  for (std::size_t m = 1; m < nm; ++m) {
    if (dist[m] < dist[tail]) tail = m;
  }
  std::vector<std::size_t> seq(nops);
  seq[nops - 1] = tail;
  for (std::size_t j = nops - 1; j > 0; --j) {
    seq[j - 1] = parent[j][seq[j]];
  }
  return plan_from_sequence(inst, job, std::move(seq));
}

namespace detail {
inline SubgradientReport assemble_dual_report(
    const TransportAssignInstance& inst, const std::vector<JobPlan>& plans,
    const DenseVector& x, bool exact) {
  SubgradientReport rep;
  rep.exact = exact;
  DenseVector load(inst.machines, 0.0);
  double total = 0.0;
  for (const JobPlan& plan : plans) {
    total += plan_value(plan, x);
    add_in_place(load, plan.load);
  }
  rep.value = total - dot(x, inst.capacity);
  rep.gradient.resize(inst.machines);
  for (std::size_t m = 0; m < inst.machines; ++m) {
    rep.gradient[m] = load[m] - inst.capacity[m];
  }
  return rep;
}
}  // namespace detail

inline SubgradientReport transport_dual_exact(
    const TransportAssignInstance& inst, const DenseVector& x) {
  if (x.size() != inst.machines) {
    throw std::invalid_argument("transport_dual_exact: dimension mismatch");
  }
  std::vector<JobPlan> plans;
  plans.reserve(inst.jobs());
  for (std::size_t i = 0; i < inst.jobs(); ++i) {
    plans.push_back(transport_best_plan(inst, i, x));
  }
  return detail::assemble_dual_report(inst, plans, x, true);
}

// Grouped surrogate oracle: stale jobs keep their previously chosen chains,
// re-priced at the query multipliers (each chain is feasible for the relaxed
// problem at any x, so the mixed value stays a valid over-estimate of q(x)).
// Each call re-plans at least one group of jobs, round-robin, and keeps going
// until the value drops to level - epsilon; a call that re-plans every group
// is exact and matches transport_dual_exact bit for bit.
class TransportDualOracle {
 public:
  explicit TransportDualOracle(const TransportAssignInstance& inst)
      : inst_(&inst), plans_(inst.jobs()) {
    validate(inst);
    if (inst.group_size == 0) {
      throw std::invalid_argument("TransportDualOracle: group_size == 0");
    }
    ngroups_ = (inst.jobs() + inst.group_size - 1) / inst.group_size;
  }

  std::size_t group_count() const { return ngroups_; }
  long long jobs_planned() const { return planned_; }

  SubgradientReport evaluate_cached(const DenseVector& x) const {
    return detail::assemble_dual_report(*inst_, plans_, x, false);
  }

  void refresh_group(std::size_t gi, const DenseVector& x) {
    const std::size_t lo = gi * inst_->group_size;
    const std::size_t hi = std::min(inst_->jobs(), lo + inst_->group_size);
    for (std::size_t i = lo; i < hi; ++i) {
      plans_[i] = transport_best_plan(*inst_, i, x);
    }
    planned_ += static_cast<long long>(hi - lo);
  }

  // Native (max) sense: level over-estimates the optimum and the surrogate
  // must fall to level - eps unless it is exact.
  SubgradientReport operator()(const DenseVector& x, double level,
                               double eps) {
    if (x.size() != inst_->machines) {
      throw std::invalid_argument("TransportDualOracle: dimension mismatch");
    }
    if (!primed_) {
      primed_ = true;
      refresh_all(x);
      return detail::assemble_dual_report(*inst_, plans_, x, true);
    }
    SubgradientReport rep;
    for (std::size_t refreshed = 0; refreshed + 1 < ngroups_; ++refreshed) {
      refresh_group(cursor_, x);
      cursor_ = (cursor_ + 1) % ngroups_;
      rep = evaluate_cached(x);
      if (rep.value <= level - eps) return rep;
    }
    // The one remaining stale group: after this every plan is optimal at x,
    // so the assembly is exact.
    refresh_group(cursor_, x);
    cursor_ = (cursor_ + 1) % ngroups_;
    return detail::assemble_dual_report(*inst_, plans_, x, true);
  }

 private:
  void refresh_all(const DenseVector& x) {
    for (std::size_t gi = 0; gi < ngroups_; ++gi) refresh_group(gi, x);
    cursor_ = 0;
  }

  const TransportAssignInstance* inst_;
  std::vector<JobPlan> plans_;
  std::size_t ngroups_ = 0;
  bool primed_ = false;
  std::size_t cursor_ = 0;
  long long planned_ = 0;
};

}  // namespace levelstep

#endif  // LEVELSTEP_PROBLEMS_TRANSPORT_HPP_
