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

#ifndef LEVELSTEP_IO_INSTANCE_JSON_HPP_
#define LEVELSTEP_IO_INSTANCE_JSON_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "levelstep/problems/gap.hpp"
#include "levelstep/problems/l1.hpp"
#include "levelstep/problems/transport.hpp"

// Instance files are JSON objects with
//   schema_version : 1
//   family         : "l1" | "gap" | "transport"
//   seed           : unsigned integer the instance was generated from
//   known_fstar    : number or null
// plus the family's own fields:
//   l1        : a (rows of numbers), b, known_xstar
//   gap       : cost, time (job-major rows), capacity, known_xstar
//   transport : machines, cost/time ([job][op][machine]), transfer
//               ([job][m][m]), capacity, group_size

namespace levelstep {

inline constexpr int kInstanceSchemaVersion = 1;

namespace detail {

inline nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const nlohmann::json& rows, const char* what) {
  if (!rows.is_array() || rows.empty() || !rows[0].is_array()) {
    throw std::invalid_argument(std::string("instance json: ") + what +
                                " must be an array of rows");
  }
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (rows[i].size() != m.cols) {
      throw std::invalid_argument(std::string("instance json: ragged ") + what);
    }
    for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

inline void check_header(const nlohmann::json& j, const char* family) {
  if (j.value("schema_version", -1) != kInstanceSchemaVersion) {
    throw std::invalid_argument("instance json: unsupported schema_version");
  }
  if (j.value("family", std::string()) != family) {
    throw std::invalid_argument(std::string("instance json: expected family '") +
                                family + "'");
  }
}

inline void put_optional(nlohmann::json& j, const char* key,
                         const std::optional<double>& v) {
  j[key] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace detail

inline std::string instance_family(const nlohmann::json& j) {
  const std::string fam = j.value("family", std::string());
  if (fam != "l1" && fam != "gap" && fam != "transport") {
    throw std::invalid_argument("instance json: unknown family '" + fam + "'");
  }
  return fam;
}

inline nlohmann::json instance_to_json(const L1Instance& inst) {
  nlohmann::json j;
  j["schema_version"] = kInstanceSchemaVersion;
  j["family"] = "l1";
  j["seed"] = inst.seed;
  j["a"] = detail::matrix_to_json(inst.a);
  j["b"] = inst.b;
  detail::put_optional(j, "known_fstar", inst.known_fstar);
  j["known_xstar"] = inst.known_xstar ? nlohmann::json(*inst.known_xstar)
                                      : nlohmann::json(nullptr);
  return j;
}

inline L1Instance l1_from_json(const nlohmann::json& j) {
  detail::check_header(j, "l1");
  L1Instance inst;
  inst.seed = j.value("seed", 0ull);
  inst.a = detail::matrix_from_json(j.at("a"), "a");
  inst.b = j.at("b").get<DenseVector>();
  if (!j.value("known_fstar", nlohmann::json()).is_null()) {
    inst.known_fstar = j["known_fstar"].get<double>();
  }
  if (j.contains("known_xstar") && !j["known_xstar"].is_null()) {
    inst.known_xstar = j["known_xstar"].get<DenseVector>();
  }
  validate(inst);
  return inst;
}

inline nlohmann::json instance_to_json(const GapDualInstance& inst) {
  nlohmann::json j;
  j["schema_version"] = kInstanceSchemaVersion;
  j["family"] = "gap";
  j["seed"] = inst.seed;
  j["cost"] = detail::matrix_to_json(inst.cost);
  j["time"] = detail::matrix_to_json(inst.time);
  j["capacity"] = inst.capacity;
  detail::put_optional(j, "known_fstar", inst.known_fstar);
  j["known_xstar"] = inst.known_xstar ? nlohmann::json(*inst.known_xstar)
                                      : nlohmann::json(nullptr);
  return j;
}

inline GapDualInstance gap_from_json(const nlohmann::json& j) {
  detail::check_header(j, "gap");
  GapDualInstance inst;
  inst.seed = j.value("seed", 0ull);
  inst.cost = detail::matrix_from_json(j.at("cost"), "cost");
  inst.time = detail::matrix_from_json(j.at("time"), "time");
  inst.capacity = j.at("capacity").get<DenseVector>();
  if (!j.value("known_fstar", nlohmann::json()).is_null()) {
    inst.known_fstar = j["known_fstar"].get<double>();
  }
  if (j.contains("known_xstar") && !j["known_xstar"].is_null()) {
    inst.known_xstar = j["known_xstar"].get<DenseVector>();
  }
  validate(inst);
  return inst;
}

inline nlohmann::json instance_to_json(const TransportAssignInstance& inst) {
  nlohmann::json j;
  j["schema_version"] = kInstanceSchemaVersion;
  j["family"] = "transport";
  j["seed"] = inst.seed;
  j["machines"] = inst.machines;
  j["cost"] = inst.cost;
  j["time"] = inst.time;
  j["transfer"] = inst.transfer;
  j["capacity"] = inst.capacity;
  j["group_size"] = inst.group_size;
  detail::put_optional(j, "known_fstar", inst.known_fstar);
  return j;
}

inline TransportAssignInstance transport_from_json(const nlohmann::json& j) {
  detail::check_header(j, "transport");
  TransportAssignInstance inst;
  inst.seed = j.value("seed", 0ull);
  inst.machines = j.at("machines").get<std::size_t>();
  inst.cost = j.at("cost").get<std::vector<std::vector<DenseVector>>>();
  inst.time = j.at("time").get<std::vector<std::vector<DenseVector>>>();
  inst.transfer = j.at("transfer").get<std::vector<std::vector<DenseVector>>>();
  inst.capacity = j.at("capacity").get<DenseVector>();
  inst.group_size = j.value("group_size", std::size_t{1});
  if (!j.value("known_fstar", nlohmann::json()).is_null()) {
    inst.known_fstar = j["known_fstar"].get<double>();
  }
  validate(inst);
  return inst;
}

}  // namespace levelstep

#endif  // LEVELSTEP_IO_INSTANCE_JSON_HPP_
