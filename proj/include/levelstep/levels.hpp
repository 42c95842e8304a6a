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

#ifndef LEVELSTEP_LEVELS_HPP_
#define LEVELSTEP_LEVELS_HPP_

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "levelstep/core.hpp"

namespace levelstep {

// s = gamma * (f - level) / ||g||^2, the Polyak step against a target level.
inline double polyak_step(double value, double level, double grad_norm_sq,
                          double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("polyak_step: gamma <= 0");
  if (!(grad_norm_sq > 0.0)) {
    throw std::invalid_argument("polyak_step: zero gradient");
  }
  if (value < level) {
    throw contract_error("polyak_step: value fell below the level");
  }
  return gamma * (value - level) / grad_norm_sq;
}

struct LevelAdjustment {
  int iter = 0;
  double old_level = 0.0;
  double new_level = 0.0;
};

// Target level plus the window statistic feeding its next adjustment.
// observe() every oracle value; adjust() when the detector window collapses:
//   level' = (gamma / gamma_bar) * level + (1 - gamma/gamma_bar) * window_best
// which is strictly above the old level whenever window_best is.
class LevelState {
 public:
  explicit LevelState(double initial_level) : level_(initial_level) {
    if (!is_finite(initial_level)) {
      throw std::invalid_argument("LevelState: non-finite initial level");
    }
  }

  double level() const { return level_; }
  double window_best() const { return window_best_; }
  const std::vector<LevelAdjustment>& adjustments() const {
    return adjustments_;
  }

  void observe(double value) {
    if (value < window_best_) window_best_ = value;
  }

  const LevelAdjustment& adjust(int iter, double gamma, double gamma_bar) {
    if (!(0.0 < gamma && gamma < gamma_bar && gamma_bar < 2.0)) {
      throw std::invalid_argument("LevelState::adjust: need 0<gamma<gamma_bar<2");
    }
    if (!is_finite(window_best_)) {
      throw contract_error("LevelState::adjust: no values observed");
    }
    if (!(window_best_ > level_)) {
      throw contract_error(
          "LevelState::adjust: window best does not exceed the level");
    }
    const double ratio = gamma / gamma_bar;
    const double next = ratio * level_ + (1.0 - ratio) * window_best_;
    adjustments_.push_back({iter, level_, next});
    level_ = next;
    window_best_ = std::numeric_limits<double>::infinity();
    return adjustments_.back();
  }

 private:
  double level_;
  double window_best_ = std::numeric_limits<double>::infinity();
  std::vector<LevelAdjustment> adjustments_;
};

// Classic path-length target control: the level trails the best value by
// delta, the travelled path sum(s*||g||) since the last reset is compared
// against a budget, and delta is halved once the budget is spent without a
// delta/2 improvement.
class PathBasedController {
 public:
  PathBasedController(double delta0, double budget)
      : delta_(delta0), budget_(budget) {
    if (!(delta0 > 0.0) || !(budget > 0.0)) {
      throw std::invalid_argument("PathBasedController: delta0, budget > 0");
    }
  }

  double level() const { return best_ - delta_; }
  double delta() const { return delta_; }

  double step(double value, double grad_norm_sq, double gamma) {
    if (value < best_) best_ = value;
    if (!std::isfinite(ref_best_)) ref_best_ = best_;
    const double s = polyak_step(value, best_ - delta_, grad_norm_sq, gamma);
    path_ += s * std::sqrt(grad_norm_sq);
    if (best_ <= ref_best_ - delta_ / 2.0) {
      ref_best_ = best_;
      path_ = 0.0;
    } else if (path_ > budget_) {
      delta_ /= 2.0;
      ref_best_ = best_;
      path_ = 0.0;
    }
    return s;
  }

 private:
  double delta_;
  double budget_;
  double best_ = std::numeric_limits<double>::infinity();
  double ref_best_ = std::numeric_limits<double>::infinity();
  double path_ = 0.0;
};

// Open-loop baselines; k counts oracle calls starting at 1.
struct ScheduledRule {
  enum class Kind { Diminishing, SquareSummable };
  Kind kind = Kind::Diminishing;
  double a = 1e-3;
  double b = 0.0;
};

inline double scheduled_step(const ScheduledRule& rule, long k) {
  if (k < 1) throw std::invalid_argument("scheduled_step: k starts at 1");
  if (!(rule.a > 0.0) || rule.b < 0.0) {
    throw std::invalid_argument("scheduled_step: need a > 0, b >= 0");
  }
  switch (rule.kind) {
    case ScheduledRule::Kind::Diminishing:
      return rule.a / std::sqrt(static_cast<double>(k));
    case ScheduledRule::Kind::SquareSummable:
      return rule.a / (static_cast<double>(k) + rule.b);
  }
  throw std::logic_error("scheduled_step: unknown rule");
}

}  // namespace levelstep

#endif  // LEVELSTEP_LEVELS_HPP_
