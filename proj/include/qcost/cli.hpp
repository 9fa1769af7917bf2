// Copyright 2026 The qcost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. run_cli is the whole tool; the binary only forwards
// argv and the standard streams.
//
// Exit codes: 0 success, 1 audited violation (or a failed eta threshold),
// 2 input or usage error.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "qcost/optim.hpp"

namespace qcost {

inline constexpr std::string_view kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInput = 2;

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

struct EtaCriterion {
  std::string name;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool pass = false;
};

struct EtaReport {
  double deficit_computational = 0.0;
  double deficit_optimized = 0.0;
  double ree_ac_b = 0.0;
  double ree_ab_c = 0.0;
  double ree_a_bc = 0.0;
  double measured_separable = 0.0;
  double ppt_ac_b = 0.0;
  double ppt_ab_c = 0.0;
  std::vector<EtaCriterion> criteria;

  bool pass() const;
};

/// Every number behind the eta command, with its threshold verdicts.
EtaReport eta_reproduction(const OptimizerConfig& cfg);

nlohmann::json to_json(const EtaReport& r);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcost
