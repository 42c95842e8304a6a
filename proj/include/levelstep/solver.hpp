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

#ifndef LEVELSTEP_SOLVER_HPP_
#define LEVELSTEP_SOLVER_HPP_

#include <chrono>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "levelstep/core.hpp"
#include "levelstep/detectors.hpp"
#include "levelstep/levels.hpp"
#include "levelstep/linfeas.hpp"

namespace levelstep {

enum class Method {
  Psadla,          // Polyak step + infeasibility-triggered level raises (PSVD window)
  SddLevel,        // same, but the window linearizes shrinking-distance conditions
  PathBased,       // level trails the best value by a halving delta
  Diminishing,     // s_k = a / sqrt(k)
  SquareSummable,  // s_k = a / (k + b)
};

enum class StopReason {
  GapMet,
  MaxIters,
  TimeLimit,
  ZeroGradient,
  ContractViolation,
  StepsizeUnderflow,
};

inline const char* to_string(Method m) {
  switch (m) {
    case Method::Psadla: return "psadla";
    case Method::SddLevel: return "sdd";
    case Method::PathBased: return "path";
    case Method::Diminishing: return "diminishing";
    case Method::SquareSummable: return "square-summable";
  }
  return "?";
}

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::GapMet: return "gap-met";
    case StopReason::MaxIters: return "max-iters";
    case StopReason::TimeLimit: return "time-limit";
    case StopReason::ZeroGradient: return "zero-gradient";
    case StopReason::ContractViolation: return "contract-violation";
    case StopReason::StepsizeUnderflow: return "stepsize-underflow";
  }
  return "?";
}

inline Method parse_method(const std::string& s) {
  if (s == "psadla") return Method::Psadla;
  if (s == "sdd") return Method::SddLevel;
  if (s == "path") return Method::PathBased;
  if (s == "diminishing") return Method::Diminishing;
  if (s == "square-summable") return Method::SquareSummable;
  throw std::invalid_argument("unknown method '" + s + "'");
}

inline bool method_uses_window(Method m) {
  return m == Method::Psadla || m == Method::SddLevel;
}

inline bool method_uses_polyak(Method m) {
  return method_uses_window(m) || m == Method::PathBased;
}

struct RunConfig {
  Method method = Method::Psadla;
  double gamma = 0.5;
  double gamma_bar = 1.0;
  double initial_level = 0.0;  // minimization frame
  DenseVector initial_point;
  FeasibleRegionSpec region = FeasibleRegionSpec::unconstrained();
  double stop_gap = 1e-6;
  long max_iters = 1000;
  double time_limit_ms = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;      // bookkeeping only; the loop draws nothing
  double epsilon = 1e-10;      // surrogate-value margin over the level
  long check_every = 1;        // test window feasibility every c-th append
  double tol_feas = kDefaultFeasTol;
  // PathBased
  double path_delta0 = 1.0;
  double path_budget = 1.0;
  // Diminishing / SquareSummable
  double sched_a = 1e-3;
  double sched_b = 0.0;
};

struct RunResult {
  std::vector<TraceRecord> trace;
  StopReason stop_reason = StopReason::MaxIters;
  double best_value = std::numeric_limits<double>::infinity();
  DenseVector best_point;
  double final_level = std::numeric_limits<double>::quiet_NaN();
  std::vector<LevelAdjustment> adjustments;
  std::string diagnostic;  // non-empty for abnormal stops
};

namespace detail {

inline void validate_config(const RunConfig& cfg) {
  if (cfg.initial_point.empty()) {
    throw std::invalid_argument("RunConfig: empty initial point");
  }
  if (!is_finite(cfg.initial_point)) {
    throw std::invalid_argument("RunConfig: non-finite initial point");
  }
  if (method_uses_polyak(cfg.method) &&
      !(0.0 < cfg.gamma && cfg.gamma < cfg.gamma_bar && cfg.gamma_bar < 2.0)) {
    throw std::invalid_argument("RunConfig: need 0 < gamma < gamma_bar < 2");
  }
  if (method_uses_window(cfg.method) && !is_finite(cfg.initial_level)) {
    throw std::invalid_argument("RunConfig: non-finite initial level");
  }
  if (cfg.method == Method::PathBased &&
      (!(cfg.path_delta0 > 0.0) || !(cfg.path_budget > 0.0))) {
    throw std::invalid_argument("RunConfig: need path_delta0, path_budget > 0");
  }
  if ((cfg.method == Method::Diminishing ||
       cfg.method == Method::SquareSummable) &&
      (!(cfg.sched_a > 0.0) || cfg.sched_b < 0.0)) {
    throw std::invalid_argument("RunConfig: need sched_a > 0, sched_b >= 0");
  }
  if (!(cfg.stop_gap > 0.0)) {
    throw std::invalid_argument("RunConfig: stop_gap must be > 0");
  }
  if (cfg.max_iters < 1) throw std::invalid_argument("RunConfig: max_iters < 1");
  if (cfg.check_every < 1) {
    throw std::invalid_argument("RunConfig: check_every < 1");
  }
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("RunConfig: epsilon <= 0");
  if (!(cfg.tol_feas > 0.0)) {
    throw std::invalid_argument("RunConfig: tol_feas <= 0");
  }
  if (!(cfg.time_limit_ms > 0.0)) {
    throw std::invalid_argument("RunConfig: time_limit_ms <= 0");
  }
}

class StopWatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

}  // namespace detail

inline constexpr double kStepUnderflow = 1e-15;
inline constexpr int kUnderflowPatience = 50;

// Core loop, minimization frame.  The oracle is called as
// oracle(x, level, epsilon); level is -inf for methods that do not keep one.
// Its report must either be exact or carry value >= level + epsilon.
template <typename LeveledOracle>
RunResult run_approximate(LeveledOracle&& oracle, const RunConfig& cfg) {
  detail::validate_config(cfg);
  const detail::StopWatch watch;
  const std::size_t dim = cfg.initial_point.size();
  const bool windowed = method_uses_window(cfg.method);

  DenseVector x = project(cfg.initial_point, cfg.region);
  LevelState level_state(windowed ? cfg.initial_level : 0.0);
  PathBasedController path_ctl(cfg.path_delta0, cfg.path_budget);
  DetectorWindow window(
      cfg.method == Method::SddLevel ? DetectorKind::Sdd : DetectorKind::Psvd,
      dim,
      cfg.method == Method::SddLevel ? FeasibleRegionSpec::unconstrained()
                                     : cfg.region);
  if (cfg.method == Method::SddLevel) {
    window.reset(0, x);
  } else {
    window.reset(0);
  }
  const ScheduledRule sched{cfg.method == Method::SquareSummable
                                ? ScheduledRule::Kind::SquareSummable
                                : ScheduledRule::Kind::Diminishing,
                            cfg.sched_a, cfg.sched_b};

  RunResult out;
  out.best_point = x;
  int underflow_streak = 0;
  bool path_started = false;

  auto fail = [&](const std::string& why) {
    out.stop_reason = StopReason::ContractViolation;
    out.diagnostic = why;
    out.final_level = windowed ? level_state.level()
                               : std::numeric_limits<double>::quiet_NaN();
    out.adjustments = level_state.adjustments();
    return out;
  };

  for (long k = 0; k < cfg.max_iters; ++k) {
    double oracle_level = -std::numeric_limits<double>::infinity();
    if (windowed) {
      oracle_level = level_state.level();
    } else if (cfg.method == Method::PathBased && path_started) {
      oracle_level = path_ctl.level();
    }

    const SubgradientReport rep = oracle(x, oracle_level, cfg.epsilon);
    if (rep.gradient.size() != dim) {
      return fail("oracle returned a gradient of wrong dimension at iteration " +
                  std::to_string(k));
    }
    if (!is_finite(rep.value) || !is_finite(rep.gradient)) {
      return fail("oracle returned non-finite values at iteration " +
                  std::to_string(k));
    }
    if (!rep.exact && rep.value < oracle_level + cfg.epsilon) {
      return fail("inexact oracle value failed to clear level + epsilon at "
                  "iteration " + std::to_string(k));
    }
    if (windowed && rep.value < level_state.level()) {
      return fail("value fell below the level at iteration " +
                  std::to_string(k) + "; the level no longer under-estimates");
    }

    if (rep.value < out.best_value) {
      out.best_value = rep.value;
      out.best_point = x;
    }
    level_state.observe(rep.value);

    const double g2 = norm_sq(rep.gradient);
    TraceRecord rec;
    rec.iter = static_cast<int>(k);
    rec.value = rep.value;
    rec.best_value = out.best_value;

    if (g2 == 0.0) {
      // A zero subgradient certifies optimality; nothing further to cut.
      rec.level = windowed ? level_state.level()
                 : cfg.method == Method::PathBased && path_started
                     ? path_ctl.level()
                     : std::numeric_limits<double>::quiet_NaN();
      rec.window_size = window.cut_count();
      rec.elapsed_ms = watch.ms();
      out.trace.push_back(rec);
      out.stop_reason = StopReason::ZeroGradient;
      break;
    }

    double s = 0.0;
    switch (cfg.method) {
      case Method::Psadla:
      case Method::SddLevel:
        s = polyak_step(rep.value, level_state.level(), g2, cfg.gamma);
        break;
      case Method::PathBased:
        s = path_ctl.step(rep.value, g2, cfg.gamma);
        path_started = true;
        break;
      case Method::Diminishing:
      case Method::SquareSummable:
        s = scheduled_step(sched, k + 1);
        break;
    }

    DenseVector x_next = project(axpy(x, -s, rep.gradient), cfg.region);

    bool triggered = false;
    if (windowed) {
      if (cfg.method == Method::Psadla) {
        window.append_psvd(x, rep.gradient, s, cfg.gamma_bar);
      } else {
        window.append_sdd(x_next);
      }
      const bool due =
          ((k + 1 - window.start_iter()) % cfg.check_every) == 0;
      if (due && window.cut_count() > 0) {
        triggered = !window.test(cfg.tol_feas).feasible;
      }
      if (triggered) {
        if (!(level_state.window_best() > level_state.level())) {
          return fail("window best does not exceed the level at iteration " +
                      std::to_string(k));
        }
        level_state.adjust(static_cast<int>(k), cfg.gamma, cfg.gamma_bar);
        if (cfg.method == Method::SddLevel) {
          window.reset(static_cast<int>(k) + 1, x_next);
        } else {
          window.reset(static_cast<int>(k) + 1);
        }
      }
    }

    rec.level = windowed ? level_state.level()
               : cfg.method == Method::PathBased
                   ? path_ctl.level()
                   : std::numeric_limits<double>::quiet_NaN();
    rec.stepsize = s;
    rec.grad_norm_sq = g2;
    rec.window_size = window.cut_count();
    rec.triggered = triggered;
    rec.elapsed_ms = watch.ms();
    out.trace.push_back(rec);

    x = std::move(x_next);

    const bool has_level = windowed || cfg.method == Method::PathBased;
    const double cur_level =
        windowed ? level_state.level()
                 : cfg.method == Method::PathBased
                       ? path_ctl.level()
                       : -std::numeric_limits<double>::infinity();
    if (has_level && out.best_value - cur_level < cfg.stop_gap) {
      out.stop_reason = StopReason::GapMet;
      break;
    }
    underflow_streak = s < kStepUnderflow ? underflow_streak + 1 : 0;
    if (underflow_streak >= kUnderflowPatience) {
      out.stop_reason = StopReason::StepsizeUnderflow;
      out.diagnostic = "stepsize below " + std::to_string(kStepUnderflow) +
                       " for " + std::to_string(kUnderflowPatience) +
                       " consecutive iterations";
      break;
    }
    if (watch.ms() > cfg.time_limit_ms) {
      out.stop_reason = StopReason::TimeLimit;
      break;
    }
  }

  out.final_level = windowed ? level_state.level()
                   : cfg.method == Method::PathBased && path_started
                       ? path_ctl.level()
                       : std::numeric_limits<double>::quiet_NaN();
  out.adjustments = level_state.adjustments();
  return out;
}

// Same loop with a level-blind oracle; reports are expected to be exact.
template <typename Oracle>
RunResult run_exact(Oracle&& oracle, const RunConfig& cfg) {
  return run_approximate(
      [&oracle](const DenseVector& x, double, double) { return oracle(x); },
      cfg);
}

// Adapters between a problem's native sense and the minimization frame.
template <typename LeveledOracle>
auto make_canonical_oracle(LeveledOracle oracle, Sense sense) {
  return [oracle = std::move(oracle), sense](
             const DenseVector& x, double level, double eps) mutable {
    const double native_level = sense == Sense::Maximize ? -level : level;
    return to_minimization(oracle(x, native_level, eps), sense);
  };
}

template <typename Oracle>
auto make_canonical_plain_oracle(Oracle oracle, Sense sense) {
  return [oracle = std::move(oracle), sense](const DenseVector& x) mutable {
    return to_minimization(oracle(x), sense);
  };
}

inline double level_to_canonical(double native_level, Sense sense) {
  return sense == Sense::Maximize ? -native_level : native_level;
}

// Restates a minimization-frame result in the problem's native sense.
inline RunResult to_sense(RunResult r, Sense sense) {
  if (sense == Sense::Minimize) return r;
  auto flip = [](double v) { return -v; };
  for (TraceRecord& t : r.trace) {
    t.value = flip(t.value);
    t.best_value = flip(t.best_value);
    t.level = flip(t.level);  // NaN stays NaN
  }
  r.best_value = flip(r.best_value);
  r.final_level = flip(r.final_level);
  for (LevelAdjustment& a : r.adjustments) {
    a.old_level = flip(a.old_level);
    a.new_level = flip(a.new_level);
  }
  return r;
}

}  // namespace levelstep

#endif  // LEVELSTEP_SOLVER_HPP_
