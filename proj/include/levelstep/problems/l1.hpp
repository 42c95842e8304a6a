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

#ifndef LEVELSTEP_PROBLEMS_L1_HPP_
#define LEVELSTEP_PROBLEMS_L1_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "levelstep/core.hpp"

namespace levelstep {

// min_x sum_m |a_m^T x - b_m|.  Minimization problem; subgradients use the
// convention z_m = sign(residual) with z_m = 0 exactly at a kink.
struct L1Instance {
  Matrix a;       // m rows, n cols
  DenseVector b;  // m

  std::uint64_t seed = 0;
  std::optional<double> known_fstar;
  std::optional<DenseVector> known_xstar;

  std::size_t rows() const { return a.rows; }
  std::size_t dim() const { return a.cols; }
};

inline void validate(const L1Instance& inst) {
  if (inst.a.rows == 0 || inst.a.cols == 0) {
    throw std::invalid_argument("L1Instance: empty matrix");
  }
  if (inst.b.size() != inst.a.rows) {
    throw std::invalid_argument("L1Instance: length of b != row count");
  }
}

inline SubgradientReport l1_exact(const L1Instance& inst,
                                  const DenseVector& x) {
  if (x.size() != inst.dim()) {
    throw std::invalid_argument("l1_exact: dimension mismatch");
  }
  SubgradientReport rep;
  rep.gradient.assign(inst.dim(), 0.0);
  rep.exact = true;
  for (std::size_t m = 0; m < inst.rows(); ++m) {
    const double* row = inst.a.row(m);
    double res = -inst.b[m];
    for (std::size_t j = 0; j < inst.dim(); ++j) res += row[j] * x[j];
    if (res > 0.0) {
      rep.value += res;
      for (std::size_t j = 0; j < inst.dim(); ++j) rep.gradient[j] += row[j];
    } else if (res < 0.0) {
      rep.value -= res;
      for (std::size_t j = 0; j < inst.dim(); ++j) rep.gradient[j] -= row[j];
    }
    // res == 0: the term contributes nothing to value or subgradient.
  }
  return rep;
}

// Grouped surrogate oracle over contiguous row blocks.  Stale groups
// contribute their last linearization f_i(x_t) + g_i^T (x - x_t); fresh
// groups are recomputed at the query point.  Each call refreshes at least
// one group (round-robin) and keeps refreshing until the surrogate clears
// level + epsilon; if every group ends up fresh the call degenerates to one
// exact row sweep whose report is bit-identical to l1_exact.
class L1IncrementalOracle {
 public:
  L1IncrementalOracle(const L1Instance& inst, std::size_t group_size)
      : inst_(&inst), group_size_(group_size) {
    validate(inst);
    if (group_size_ == 0) {
      throw std::invalid_argument("L1IncrementalOracle: group_size == 0");
    }
    ngroups_ = (inst.rows() + group_size_ - 1) / group_size_;
    group_grad_.assign(ngroups_, DenseVector(inst.dim(), 0.0));
    group_intercept_.assign(ngroups_, 0.0);
  }

  std::size_t group_count() const { return ngroups_; }
  long long component_evaluations() const { return evals_; }

  // Surrogate from the caches alone; no refresh, not exact.
  SubgradientReport evaluate_cached(const DenseVector& x) const {
    SubgradientReport rep;
    rep.exact = false;
    rep.gradient.assign(inst_->dim(), 0.0);
    double intercept = 0.0;
    for (std::size_t gi = 0; gi < ngroups_; ++gi) {
      add_in_place(rep.gradient, group_grad_[gi]);
      intercept += group_intercept_[gi];
    }
    rep.value = intercept + dot(rep.gradient, x);
    return rep;
  }

  void refresh_group(std::size_t gi, const DenseVector& x) {
    const auto [lo, hi] = group_rows(gi);
    DenseVector grad(inst_->dim(), 0.0);
    double value = 0.0;
    for (std::size_t m = lo; m < hi; ++m) {
      const double* row = inst_->a.row(m);
      double res = -inst_->b[m];
      for (std::size_t j = 0; j < inst_->dim(); ++j) res += row[j] * x[j];
      if (res > 0.0) {
        value += res;
        for (std::size_t j = 0; j < inst_->dim(); ++j) grad[j] += row[j];
      } else if (res < 0.0) {
        value -= res;
        for (std::size_t j = 0; j < inst_->dim(); ++j) grad[j] -= row[j];
      }
    }
    evals_ += static_cast<long long>(hi - lo);
    group_intercept_[gi] = value - dot(grad, x);
    group_grad_[gi] = std::move(grad);
  }

  SubgradientReport operator()(const DenseVector& x, double level,
                               double eps) {
    if (x.size() != inst_->dim()) {
      throw std::invalid_argument("L1IncrementalOracle: dimension mismatch");
    }
    if (!primed_) {
      primed_ = true;
      return full_sweep(x);
    }
    SubgradientReport rep;
    for (std::size_t refreshed = 0; refreshed + 1 < ngroups_; ++refreshed) {
      refresh_group(cursor_, x);
      cursor_ = (cursor_ + 1) % ngroups_;
      rep = evaluate_cached(x);
      if (rep.value >= level + eps) return rep;
    }
    // Everything else is stale-free only after a full pass; take the exact
    // route, which also refreshes the remaining caches.
    return full_sweep(x);
  }

 private:
  std::pair<std::size_t, std::size_t> group_rows(std::size_t gi) const {
    const std::size_t lo = gi * group_size_;
    return {lo, std::min(inst_->rows(), lo + group_size_)};
  }

  // One pass over all rows: exact value and subgradient accumulated in row
  // order (same association as l1_exact), group caches rebuilt in passing.
  SubgradientReport full_sweep(const DenseVector& x) {
    SubgradientReport rep;
    rep.exact = true;
    rep.gradient.assign(inst_->dim(), 0.0);
    for (std::size_t gi = 0; gi < ngroups_; ++gi) {
      const auto [lo, hi] = group_rows(gi);
      DenseVector grad(inst_->dim(), 0.0);
      double value = 0.0;
      for (std::size_t m = lo; m < hi; ++m) {
        const double* row = inst_->a.row(m);
        double res = -inst_->b[m];
        for (std::size_t j = 0; j < inst_->dim(); ++j) res += row[j] * x[j];
        if (res > 0.0) {
          rep.value += res;
          value += res;
          for (std::size_t j = 0; j < inst_->dim(); ++j) {
            rep.gradient[j] += row[j];
            grad[j] += row[j];
          }
        } else if (res < 0.0) {
          rep.value -= res;
          value -= res;
          for (std::size_t j = 0; j < inst_->dim(); ++j) {
            rep.gradient[j] -= row[j];
            grad[j] -= row[j];
          }
        }
      }
      group_intercept_[gi] = value - dot(grad, x);
      group_grad_[gi] = std::move(grad);
    }
    evals_ += static_cast<long long>(inst_->rows());
    cursor_ = 0;
    return rep;
  }

  const L1Instance* inst_;
  std::size_t group_size_;
  std::size_t ngroups_ = 0;
  std::vector<DenseVector> group_grad_;
  std::vector<double> group_intercept_;
  bool primed_ = false;
  std::size_t cursor_ = 0;
  long long evals_ = 0;
};

}  // namespace levelstep

#endif  // LEVELSTEP_PROBLEMS_L1_HPP_
