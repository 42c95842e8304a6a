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

#ifndef LEVELSTEP_PROBLEMS_ORLIB_HPP_
#define LEVELSTEP_PROBLEMS_ORLIB_HPP_

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "levelstep/problems/gap.hpp"

namespace levelstep {

// Single-instance OR-Library assignment format, whitespace separated:
//   machines jobs
//   cost matrix, one row per machine (machines x jobs values)
//   resource matrix, same layout
//   capacities (machines values)
// Matrices arrive machine-major and are transposed into the job-major
// layout used here.

// Reference objective values for instances this toolkit is routinely run
// against, keyed by the customary file stem.  The format itself carries no
// instance identity, hence the explicit name.
inline std::optional<double> orlib_known_optimum(const std::string& name) {
  if (name == "d201600") return 97821.35;
  if (name == "d401600") return 97105.0;
  if (name == "d801600") return 97034.0;
  return std::nullopt;
}

namespace detail {

class TokenReader {
 public:
  explicit TokenReader(const std::string& text) : in_(text) {}

  double next(const char* section) {
    std::string tok;
    if (!(in_ >> tok)) {
      throw std::invalid_argument(std::string("orlib parse error: input ended "
                                              "inside the ") + section);
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) {
      throw std::invalid_argument("orlib parse error: bad number '" + tok +
                                  "' in the " + section);
    }
    return v;
  }

  bool drained() {
    std::string tok;
    return !(in_ >> tok);
  }

 private:
  std::istringstream in_;
};

}  // namespace detail

inline GapDualInstance parse_gap_orlib(const std::string& text,
                                       const std::string& name = "") {
  detail::TokenReader rd(text);
  const double md = rd.next("header");
  const double nd = rd.next("header");
  if (md < 1 || nd < 1 || md != static_cast<long>(md) ||
      nd != static_cast<long>(nd)) {
    throw std::invalid_argument("orlib parse error: header must be two "
                                "positive integers (machines jobs)");
  }
  const std::size_t machines = static_cast<std::size_t>(md);
  const std::size_t jobs = static_cast<std::size_t>(nd);

  GapDualInstance inst;
  inst.cost = Matrix(jobs, machines);
  inst.time = Matrix(jobs, machines);
  for (std::size_t m = 0; m < machines; ++m) {
    for (std::size_t j = 0; j < jobs; ++j) {
      inst.cost(j, m) = rd.next("cost matrix");
    }
  }
  for (std::size_t m = 0; m < machines; ++m) {
    for (std::size_t j = 0; j < jobs; ++j) {
      inst.time(j, m) = rd.next("resource matrix");
    }
  }
  inst.capacity.resize(machines);
  for (std::size_t m = 0; m < machines; ++m) {
    inst.capacity[m] = rd.next("capacity list");
  }
  if (!rd.drained()) {
    throw std::invalid_argument(
        "orlib parse error: trailing tokens after the capacity list");
  }
  inst.known_fstar = orlib_known_optimum(name);
  return inst;
}

inline std::string serialize_gap_orlib(const GapDualInstance& inst) {
  validate(inst);
  std::ostringstream out;
  out.precision(17);
  out << inst.machines() << ' ' << inst.jobs() << '\n';
  for (std::size_t m = 0; m < inst.machines(); ++m) {
    for (std::size_t j = 0; j < inst.jobs(); ++j) {
      out << inst.cost(j, m) << (j + 1 == inst.jobs() ? '\n' : ' ');
    }
  }
  for (std::size_t m = 0; m < inst.machines(); ++m) {
    for (std::size_t j = 0; j < inst.jobs(); ++j) {
      out << inst.time(j, m) << (j + 1 == inst.jobs() ? '\n' : ' ');
    }
  }
  for (std::size_t m = 0; m < inst.machines(); ++m) {
    out << inst.capacity[m] << (m + 1 == inst.machines() ? '\n' : ' ');
  }
  return out.str();
}

}  // namespace levelstep

#endif  // LEVELSTEP_PROBLEMS_ORLIB_HPP_
