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

#ifndef LEVELSTEP_LEVELSTEP_HPP_
#define LEVELSTEP_LEVELSTEP_HPP_

// The JSON-backed io headers (io/metrics_json.hpp, io/instance_json.hpp)
// additionally need nlohmann/json on the include path and are not pulled in
// here.

#include "levelstep/core.hpp"
#include "levelstep/detectors.hpp"
#include "levelstep/io/trace_csv.hpp"
#include "levelstep/levels.hpp"
#include "levelstep/linfeas.hpp"
#include "levelstep/problems/gap.hpp"
#include "levelstep/problems/generate.hpp"
#include "levelstep/problems/l1.hpp"
#include "levelstep/problems/orlib.hpp"
#include "levelstep/problems/transport.hpp"
#include "levelstep/rng.hpp"
#include "levelstep/solver.hpp"

#endif  // LEVELSTEP_LEVELSTEP_HPP_
