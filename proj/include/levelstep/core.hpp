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

#ifndef LEVELSTEP_CORE_HPP_
#define LEVELSTEP_CORE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace levelstep {

using DenseVector = std::vector<double>;

// Thrown when a mathematical precondition is broken by the caller or by an
// oracle (non-finite values, value below the active level, ...).  Distinct
// from std::invalid_argument, which we reserve for plain API misuse such as
// dimension mismatches.
class contract_error : public std::logic_error {
 public:
  explicit contract_error(const std::string& what) : std::logic_error(what) {}
};

inline bool is_finite(double v) { return std::isfinite(v); }

inline bool is_finite(const DenseVector& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

inline void require_same_dim(const DenseVector& a, const DenseVector& b,
                             const char* where) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

inline double dot(const DenseVector& a, const DenseVector& b) {
  require_same_dim(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm_sq(const DenseVector& a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return s;
}

inline double norm(const DenseVector& a) { return std::sqrt(norm_sq(a)); }

// y = x + alpha * d
inline DenseVector axpy(const DenseVector& x, double alpha,
                        const DenseVector& d) {
  require_same_dim(x, d, "axpy");
  DenseVector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + alpha * d[i];
  return y;
}

inline void add_in_place(DenseVector& acc, const DenseVector& d) {
  require_same_dim(acc, d, "add_in_place");
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += d[i];
}

inline void sub_in_place(DenseVector& acc, const DenseVector& d) {
  require_same_dim(acc, d, "sub_in_place");
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] -= d[i];
}

// Dense row-major matrix, just enough for the oracles and the feasibility
// checker; not a linear-algebra library.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // rows * cols, row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) {
    return data[i * cols + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data[i * cols + j];
  }

  const double* row(std::size_t i) const { return data.data() + i * cols; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

enum class Sense { Minimize, Maximize };

// One oracle answer: objective value (possibly a surrogate), a subgradient of
// the same function, and whether the pair is exact at the query point.
struct SubgradientReport {
  double value = 0.0;
  DenseVector gradient;
  bool exact = true;
};

// Maps a report stated in `sense` into the minimization frame the solver
// works in.  Involution when applied twice with Maximize.
inline SubgradientReport to_minimization(SubgradientReport r, Sense sense) {
  if (sense == Sense::Maximize) {
    r.value = -r.value;
    for (double& g : r.gradient) g = -g;
  }
  return r;
}

// Feasible sets we can project onto in closed form.
struct FeasibleRegionSpec {
  enum class Kind { Unconstrained, NonNegativeOrthant, Box };

  Kind kind = Kind::Unconstrained;
  DenseVector lower;  // Box only
  DenseVector upper;  // Box only

  static FeasibleRegionSpec unconstrained() { return {}; }

  static FeasibleRegionSpec nonnegative() {
    FeasibleRegionSpec r;
    r.kind = Kind::NonNegativeOrthant;
    return r;
  }

  static FeasibleRegionSpec box(DenseVector lo, DenseVector up) {
    if (lo.size() != up.size()) {
      throw std::invalid_argument("box: bound dimension mismatch");
    }
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (!std::isfinite(lo[i]) || !std::isfinite(up[i]) || lo[i] > up[i]) {
        throw std::invalid_argument("box: bounds must be finite with lo <= up");
      }
    }
    FeasibleRegionSpec r;
    r.kind = Kind::Box;
    r.lower = std::move(lo);
    r.upper = std::move(up);
    return r;
  }
};

// Euclidean projection onto the region.  Componentwise for all supported
// kinds, hence exact and idempotent.
inline DenseVector project(const DenseVector& x,
                           const FeasibleRegionSpec& region) {
  switch (region.kind) {
    case FeasibleRegionSpec::Kind::Unconstrained:
      return x;
    case FeasibleRegionSpec::Kind::NonNegativeOrthant: {
      DenseVector y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::max(0.0, x[i]);
      return y;
    }
    case FeasibleRegionSpec::Kind::Box: {
      require_same_dim(x, region.lower, "project(box)");
      DenseVector y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] = std::min(region.upper[i], std::max(region.lower[i], x[i]));
      }
      return y;
    }
  }
  throw std::logic_error("project: unknown region kind");
}

// One line of a run trace.  `value` is the oracle value at the iterate (a
// surrogate value in approximate mode), `level` the target level after this
// iteration's adjustment step, `stepsize` the step actually taken (computed
// against the pre-adjustment level).  For methods without a level the level
// column is NaN.
struct TraceRecord {
  int iter = 0;
  double value = 0.0;
  double best_value = 0.0;
  double level = std::numeric_limits<double>::quiet_NaN();
  double stepsize = 0.0;
  double grad_norm_sq = 0.0;
  std::size_t window_size = 0;
  bool triggered = false;
  double elapsed_ms = 0.0;
};

}  // namespace levelstep

#endif  // LEVELSTEP_CORE_HPP_
