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

#ifndef LEVELSTEP_LINFEAS_HPP_
#define LEVELSTEP_LINFEAS_HPP_

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "levelstep/core.hpp"

namespace levelstep {

// Half-space normal^T x <= rhs.
struct Cut {
  DenseVector normal;
  double rhs = 0.0;
};

struct FeasibilityVerdict {
  bool feasible = false;
  DenseVector witness;  // empty when infeasible
};

// Raised when the phase-1 simplex hits its pivot cap.  Deliberately distinct
// from an Infeasible verdict: the caller must not treat a stalled solve as a
// certificate.
class feasibility_solver_error : public std::runtime_error {
 public:
  explicit feasibility_solver_error(const std::string& what)
      : std::runtime_error(what) {}
};

inline constexpr double kDefaultFeasTol = 1e-9;

namespace detail {

// Dense phase-1 simplex tableau: minimize the sum of artificial variables of
//   Ax' + s = b,  x', s >= 0
// after splitting free variables and flipping rows with negative rhs.
// Bland's rule (smallest eligible index, then smallest basis index on ratio
// ties) plus a hard pivot cap; artificials may not re-enter the basis.
class Phase1Tableau {
 public:
  Phase1Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), stride_(cols + 1), t_(rows * (cols + 1), 0.0),
        cost_(cols + 1, 0.0), basis_(rows, 0) {}

  double& at(std::size_t i, std::size_t j) { return t_[i * stride_ + j]; }
  double& rhs(std::size_t i) { return t_[i * stride_ + n_]; }
  double& cost(std::size_t j) { return cost_[j]; }
  double objective() const { return -cost_[n_]; }
  void set_basis(std::size_t row, std::size_t col) { basis_[row] = col; }
  std::size_t basis(std::size_t row) const { return basis_[row]; }

  void mark_artificial_range(std::size_t first) { first_artificial_ = first; }

  // Subtract every artificial-basic row from the cost row so reduced costs
  // start consistent with the basis.
  void price_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      const double* row = &t_[i * stride_];
      for (std::size_t j = 0; j <= n_; ++j) cost_[j] -= row[j];
    }
  }

  // Most-negative-reduced-cost pivoting with a largest-pivot tie break; when
  // the objective stalls on a degenerate run the rule switches to Bland's
  // (smallest indices) for the remainder, which cannot cycle.
  void solve() {
    const std::size_t cap = 50 * (m_ + n_);
    std::vector<char> blocked(n_, 0);
    double last_obj = objective();
    std::size_t stalled = 0;
    bool bland = false;
    for (std::size_t pivots = 0;; ++pivots) {
      if (pivots > cap) {
        throw feasibility_solver_error(
            "phase-1 simplex exceeded its pivot cap (" + std::to_string(cap) +
            "); result would not be a certificate");
      }
      std::size_t enter = n_;
      if (bland) {
        for (std::size_t j = 0; j < n_; ++j) {
          if (!blocked[j] && cost_[j] < -kReducedCostTol) {
            enter = j;
            break;
          }
        }
      } else {
        double most = -kReducedCostTol;
        for (std::size_t j = 0; j < n_; ++j) {
          if (!blocked[j] && cost_[j] < most) {
            most = cost_[j];
            enter = j;
          }
        }
      }
      if (enter == n_) return;  // optimal

      std::size_t leave = m_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = t_[i * stride_ + enter];
        if (a <= kPivotTol) continue;
        const double ratio = t_[i * stride_ + n_] / a;
        if (ratio < best_ratio) {
          best_ratio = ratio;
          leave = i;
        } else if (ratio == best_ratio && leave < m_) {
          // Break exact ties for stability, or by index under Bland's rule.
          const bool better =
              bland ? basis_[i] < basis_[leave]
                    : a > t_[leave * stride_ + enter];
          if (better) leave = i;
        }
      }
      if (leave == m_) {
        // No usable pivot: the updated column is numerically null, so the
        // negative reduced cost is rounding noise (the objective is bounded
        // below by zero, a true descent ray cannot exist).  Retire the
        // column and reconsider the rest.
        blocked[enter] = 1;
        continue;
      }
      if (basis_[leave] >= first_artificial_) blocked[basis_[leave]] = 1;
      pivot(leave, enter);

      const double obj = objective();
      if (obj < last_obj - 1e-12 * (1.0 + std::fabs(last_obj))) {
        last_obj = obj;
        stalled = 0;
      } else if (!bland && ++stalled > m_ + 16) {
        bland = true;
      }
    }
  }

 private:
  static constexpr double kReducedCostTol = 1e-11;
  static constexpr double kPivotTol = 1e-11;

  void pivot(std::size_t leave, std::size_t enter) {
    double* prow = &t_[leave * stride_];
    const double p = prow[enter];
    for (std::size_t j = 0; j <= n_; ++j) prow[j] /= p;
    prow[enter] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == leave) continue;
      double* row = &t_[i * stride_];
      const double f = row[enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) row[j] -= f * prow[j];
      row[enter] = 0.0;
    }
    const double fc = cost_[enter];
    if (fc != 0.0) {
      for (std::size_t j = 0; j <= n_; ++j) cost_[j] -= fc * prow[j];
      cost_[enter] = 0.0;
    }
    basis_[leave] = enter;
  }

  std::size_t m_, n_, stride_;
  std::vector<double> t_;
  std::vector<double> cost_;
  std::vector<std::size_t> basis_;
  std::size_t first_artificial_ = 0;
};

}  // namespace detail

// Decides whether {x in domain : normal_i^T x <= rhs_i for all i} is empty.
// Rows are rescaled to unit normals internally, so `tol` measures violation
// per unit of normal length: Feasible when the phase-1 optimum is <= tol,
// Infeasible (no witness) when it is above.  Zero-normal cuts are satisfied
// or trivially empty on their own and are resolved up front.
inline FeasibilityVerdict check_feasible(
    const std::vector<Cut>& cuts, std::size_t dim,
    const FeasibleRegionSpec& domain = FeasibleRegionSpec::unconstrained(),
    double tol = kDefaultFeasTol) {
  if (dim == 0) throw std::invalid_argument("check_feasible: dim must be > 0");
  if (domain.kind == FeasibleRegionSpec::Kind::Box &&
      domain.lower.size() != dim) {
    throw std::invalid_argument("check_feasible: box/dim mismatch");
  }

  // Scaled rows; box bounds become ordinary rows so the variables stay free.
  std::vector<DenseVector> rows;
  std::vector<double> rhs;
  rows.reserve(cuts.size());
  for (const Cut& c : cuts) {
    if (c.normal.size() != dim) {
      throw std::invalid_argument("check_feasible: cut dimension mismatch");
    }
    if (!is_finite(c.normal) || !is_finite(c.rhs)) {
      throw std::invalid_argument("check_feasible: non-finite cut");
    }
    const double len = norm(c.normal);
    if (len == 0.0) {
      if (c.rhs >= -tol) continue;  // vacuous row
      return {false, {}};           // 0 <= negative: empty by itself
    }
    DenseVector g(dim);
    for (std::size_t j = 0; j < dim; ++j) g[j] = c.normal[j] / len;
    rows.push_back(std::move(g));
    rhs.push_back(c.rhs / len);
  }
  if (domain.kind == FeasibleRegionSpec::Kind::Box) {
    for (std::size_t j = 0; j < dim; ++j) {
      DenseVector up(dim, 0.0), lo(dim, 0.0);
      up[j] = 1.0;
      lo[j] = -1.0;
      rows.push_back(std::move(up));
      rhs.push_back(domain.upper[j]);
      rows.push_back(std::move(lo));
      rhs.push_back(-domain.lower[j]);
    }
  }

  const bool split =
      domain.kind != FeasibleRegionSpec::Kind::NonNegativeOrthant;
  const std::size_t m = rows.size();
  if (m == 0) return {true, project(DenseVector(dim, 0.0), domain)};

  const std::size_t nstruct = split ? 2 * dim : dim;
  std::size_t nart = 0;
  for (double r : rhs) {
    if (r < 0.0) ++nart;
  }
  const std::size_t ncols = nstruct + m + nart;
  detail::Phase1Tableau tab(m, ncols);
  tab.mark_artificial_range(nstruct + m);

  std::size_t art = nstruct + m;
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = rhs[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < dim; ++j) {
      tab.at(i, j) = sign * rows[i][j];
      if (split) tab.at(i, dim + j) = -sign * rows[i][j];
    }
    tab.at(i, nstruct + i) = sign;  // slack
    tab.rhs(i) = sign * rhs[i];
    if (sign < 0.0) {
      tab.at(i, art) = 1.0;
      tab.set_basis(i, art);
      tab.cost(art) = 1.0;
      ++art;
    } else {
      tab.set_basis(i, nstruct + i);
    }
  }
  tab.price_out_artificials();
  tab.solve();

  if (tab.objective() > tol) return {false, {}};

  DenseVector witness(dim, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t b = tab.basis(i);
    if (b < dim) {
      witness[b] += tab.rhs(i);
    } else if (split && b < 2 * dim) {
      witness[b - dim] -= tab.rhs(i);
    }
  }
  // Shave rounding dust off the domain-bound components.
  return {true, project(witness, domain)};
}

}  // namespace levelstep

#endif  // LEVELSTEP_LINFEAS_HPP_
