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

#ifndef LEVELSTEP_IO_TRACE_CSV_HPP_
#define LEVELSTEP_IO_TRACE_CSV_HPP_

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "levelstep/core.hpp"

namespace levelstep {

// Shortest decimal form that parses back to the same double; deterministic,
// so equal runs serialize to equal bytes.
inline std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline constexpr const char* kTraceCsvHeader =
    "iter,value,best_value,level,stepsize,grad_norm_sq,window_size,"
    "triggered,elapsed_ms";

// `with_timing = false` zeroes the elapsed column so traces can be compared
// byte for byte across runs.
inline void write_trace_csv(std::ostream& out,
                            const std::vector<TraceRecord>& trace,
                            bool with_timing = true) {
  out << kTraceCsvHeader << '\n';
  for (const TraceRecord& r : trace) {
    out << r.iter << ',' << fmt_double(r.value) << ','
        << fmt_double(r.best_value) << ',' << fmt_double(r.level) << ','
        << fmt_double(r.stepsize) << ',' << fmt_double(r.grad_norm_sq) << ','
        << r.window_size << ',' << (r.triggered ? 1 : 0) << ','
        << fmt_double(with_timing ? r.elapsed_ms : 0.0) << '\n';
  }
}

}  // namespace levelstep

#endif  // LEVELSTEP_IO_TRACE_CSV_HPP_
