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

#ifndef LEVELSTEP_IO_METRICS_JSON_HPP_
#define LEVELSTEP_IO_METRICS_JSON_HPP_

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "levelstep/io/trace_csv.hpp"
#include "levelstep/solver.hpp"

namespace levelstep {

// First 1-based iteration count whose running best is within `threshold`
// relative gap of fstar (denominator floored at 1 so a zero optimum still
// has a meaning).  nullopt when the run never got there.
inline std::optional<long> iterations_to_threshold(
    const std::vector<TraceRecord>& trace, double fstar, double threshold) {
  const double denom = std::max(1.0, std::fabs(fstar));
  for (const TraceRecord& r : trace) {
    if (std::fabs(r.best_value - fstar) <= threshold * denom) {
      return r.iter + 1;
    }
  }
  return std::nullopt;
}

inline constexpr int kMetricsSchemaVersion = 1;

// Run summary in the problem's native sense.  `with_timing = false` zeroes
// the wall-clock field for byte-stable comparisons.
inline nlohmann::json build_metrics(const RunResult& result, Method method,
                                    Sense sense,
                                    std::optional<double> known_fstar,
                                    const std::vector<double>& thresholds,
                                    bool with_timing = true) {
  nlohmann::json j;
  j["schema_version"] = kMetricsSchemaVersion;
  j["method"] = to_string(method);
  j["sense"] = sense == Sense::Maximize ? "max" : "min";
  j["stop_reason"] = to_string(result.stop_reason);
  j["iterations"] = result.trace.size();
  j["best_value"] = result.best_value;
  if (std::isnan(result.final_level)) {
    j["final_level"] = nullptr;
  } else {
    j["final_level"] = result.final_level;
  }
  j["adjustment_count"] = result.adjustments.size();
  nlohmann::json adj = nlohmann::json::array();
  for (const LevelAdjustment& a : result.adjustments) {
    adj.push_back({{"iter", a.iter},
                   {"old_level", a.old_level},
                   {"new_level", a.new_level}});
  }
  j["adjustments"] = adj;
  if (!result.diagnostic.empty()) j["diagnostic"] = result.diagnostic;
  j["known_fstar"] = known_fstar ? nlohmann::json(*known_fstar)
                                 : nlohmann::json(nullptr);
  // Threshold keys are always present so consumers see a fixed shape; they
  // are null when the optimum is unknown or was never reached.
  nlohmann::json reached = nlohmann::json::object();
  for (double thr : thresholds) {
    std::optional<long> it;
    if (known_fstar) {
      it = iterations_to_threshold(result.trace, *known_fstar, thr);
    }
    reached[fmt_double(thr)] = it ? nlohmann::json(*it) : nlohmann::json(nullptr);
  }
  j["iters_to_threshold"] = reached;
  j["wall_ms"] =
      with_timing && !result.trace.empty() ? result.trace.back().elapsed_ms
                                           : 0.0;
  return j;
}

}  // namespace levelstep

#endif  // LEVELSTEP_IO_METRICS_JSON_HPP_
