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

#ifndef LEVELSTEP_DETECTORS_HPP_
#define LEVELSTEP_DETECTORS_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "levelstep/core.hpp"
#include "levelstep/linfeas.hpp"

namespace levelstep {

enum class DetectorKind { Psvd, Sdd };

// Half-space every point no worse than the current target must satisfy,
// derived from the subgradient inequality at x with stepsize s:
//   g^T y  <=  g^T x - (s / gamma_bar) * ||g||^2.
// When s was produced by a Polyak step against a level below the optimum,
// the optimum itself satisfies the cut.
inline Cut psvd_cut(const DenseVector& x, const DenseVector& g, double s,
                    double gamma_bar) {
  require_same_dim(x, g, "psvd_cut");
  const double g2 = norm_sq(g);
  if (g2 == 0.0) {
    throw std::invalid_argument("psvd_cut: zero subgradient has no cut");
  }
  if (!(s >= 0.0) || !(gamma_bar > 0.0)) {
    throw std::invalid_argument("psvd_cut: need s >= 0 and gamma_bar > 0");
  }
  return Cut{g, dot(g, x) - (s / gamma_bar) * g2};
}

// Linearization of ||y - x_prev||^2 <= ||y - x_next||^2 (the quadratic terms
// cancel):  2 (x_prev - x_next)^T y  <=  ||x_prev||^2 - ||x_next||^2.
// Equal points give the vacuous inequality 0 <= 0; callers skip it.
inline std::optional<Cut> sdd_cut(const DenseVector& x_prev,
                                  const DenseVector& x_next) {
  require_same_dim(x_prev, x_next, "sdd_cut");
  if (x_prev == x_next) return std::nullopt;
  DenseVector normal(x_prev.size());
  for (std::size_t i = 0; i < x_prev.size(); ++i) {
    normal[i] = 2.0 * (x_prev[i] - x_next[i]);
  }
  return Cut{std::move(normal), norm_sq(x_prev) - norm_sq(x_next)};
}

// Accumulates one family of constraints between level adjustments and asks
// the feasibility checker whether they still admit a common point.  An empty
// system is the caller's signal to adjust the level and reset.
//
// The Sdd variant tracks consecutive iterates and linearizes each
// "getting closer" condition via sdd_cut; the cancellation only represents
// the original quadratic system when the decision vector is free, so Sdd
// windows insist on an Unconstrained domain.
class DetectorWindow {
 public:
  DetectorWindow(DetectorKind kind, std::size_t dim,
                 FeasibleRegionSpec domain = FeasibleRegionSpec::unconstrained())
      : kind_(kind), dim_(dim), domain_(std::move(domain)) {
    if (dim_ == 0) throw std::invalid_argument("DetectorWindow: dim == 0");
    if (kind_ == DetectorKind::Sdd &&
        domain_.kind != FeasibleRegionSpec::Kind::Unconstrained) {
      throw std::invalid_argument(
          "DetectorWindow: Sdd supports only an unconstrained domain");
    }
  }

  DetectorKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  int start_iter() const { return start_iter_; }
  std::size_t cut_count() const { return cuts_.size(); }
  const std::vector<Cut>& cuts() const { return cuts_; }

  void reset(int start_iter) {
    start_iter_ = start_iter;
    cuts_.clear();
    last_point_.reset();
  }

  void reset(int start_iter, DenseVector start_point) {
    reset(start_iter);
    if (start_point.size() != dim_) {
      throw std::invalid_argument("DetectorWindow::reset: dim mismatch");
    }
    last_point_ = std::move(start_point);
  }

  // Raw append, used by the Psvd path and by tests that craft cuts directly.
  // A cut whose normal already sits in the window only tightens that row's
  // right-hand side; subgradient cuts repeat normals heavily once the active
  // pieces settle, and folding them keeps the feasibility systems small.
  void append(Cut cut) {
    if (cut.normal.size() != dim_) {
      throw std::invalid_argument("DetectorWindow::append: dim mismatch");
    }
    if (norm_sq(cut.normal) == 0.0) {
      if (cut.rhs < 0.0) {
        throw std::invalid_argument(
            "DetectorWindow::append: zero-normal cut with negative rhs");
      }
      return;  // vacuous
    }
    for (Cut& held : cuts_) {
      if (held.normal == cut.normal) {
        held.rhs = std::min(held.rhs, cut.rhs);
        return;
      }
    }
    cuts_.push_back(std::move(cut));
  }

  void append_psvd(const DenseVector& x, const DenseVector& g, double s,
                   double gamma_bar) {
    if (kind_ != DetectorKind::Psvd) {
      throw std::logic_error("append_psvd on an Sdd window");
    }
    append(psvd_cut(x, g, s, gamma_bar));
  }

  void append_sdd(const DenseVector& x_next) {
    if (kind_ != DetectorKind::Sdd) {
      throw std::logic_error("append_sdd on a Psvd window");
    }
    if (!last_point_) {
      throw std::logic_error(
          "append_sdd: window was not reset with a start point");
    }
    if (auto cut = sdd_cut(*last_point_, x_next)) append(std::move(*cut));
    last_point_ = x_next;
  }

  // Every call re-solves from scratch; no warm start, so verdicts do not
  // depend on the query history.
  FeasibilityVerdict test(double tol = kDefaultFeasTol) const {
    return check_feasible(cuts_, dim_, domain_, tol);
  }

  // True means the accumulated system became empty: adjust the level and
  // reset the window (this class leaves both to the caller).
  bool append_and_test(Cut cut, double tol = kDefaultFeasTol) {
    append(std::move(cut));
    return !test(tol).feasible;
  }

 private:
  DetectorKind kind_;
  std::size_t dim_;
  FeasibleRegionSpec domain_;
  int start_iter_ = 0;
  std::vector<Cut> cuts_;
  std::optional<DenseVector> last_point_;
};

}  // namespace levelstep

#endif  // LEVELSTEP_DETECTORS_HPP_
