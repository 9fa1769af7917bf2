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

// Entanglement-distribution ledger: particle C travels between Alice (who
// also holds A) and Bob (who holds B) over a noiseless channel, interleaved
// with local channels. Each send is charged the one-way deficit of C, and the
// audited budget is
//
//   E_final - E_initial <= sum_i Delta_i
//
// with sound directions: upper bounds on the deficits and on E_initial, a
// lower bound on E_final.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "qcost/optim.hpp"
#include "qcost/qmat.hpp"

namespace qcost {

enum class Party { kAlice, kBob };

std::string to_string(Party p);
Party parse_party(std::string_view text);

struct SendC {
  /// When set, the sender named in the script; checked against the current owner of C.
  std::optional<Party> from;
};

struct LocalChannel {
  Party party = Party::kAlice;
  /// Operators on the party's held subsystems, ordered as in the state's labels.
  std::vector<ComplexMatrix> kraus;
};

using Step = std::variant<SendC, LocalChannel>;

/// State on labels (A,B,C): the first label is Alice's, the second Bob's, the
/// third the transmissible particle.
struct ProtocolScript {
  DensityMatrix initial_state;
  Party initial_owner_of_c = Party::kAlice;
  std::vector<Step> steps;
};

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Monotonicity of the entanglement under a local step:
/// lower bound after <= upper bound before + 1e-6.
struct LoccCheck {
  std::size_t step = 0;
  std::string cut;
  double upper_before = 0.0;
  double lower_after = 0.0;
  bool violated = false;
};

struct LedgerReport {
  Bounds e_initial;
  Bounds e_final;
  std::string initial_cut;
  std::string final_cut;
  std::vector<double> deltas;
  std::vector<LoccCheck> locc_checks;
  Party final_owner = Party::kAlice;
  std::size_t sends_alice_to_bob = 0;
  std::size_t sends_bob_to_alice = 0;
  double budget_slack = 0.0;
  bool violated = false;
  bool locc_violated = false;
};

/// Labels held by `party` given who holds the third subsystem.
std::vector<std::string> held_labels(const SubsystemDims& dims, Party party, Party owner_of_c);

/// sum_k K rho K† with each K acting on `labels` (in the state's label order).
/// Throws InputError unless sum_k K†K = I within 1e-9.
DensityMatrix apply_kraus(const DensityMatrix& rho, const std::vector<std::string>& labels,
                          const std::vector<ComplexMatrix>& kraus);

DensityMatrix apply_local_channel(const DensityMatrix& rho, Party party, Party owner_of_c,
                                  const std::vector<ComplexMatrix>& kraus);

LedgerReport run_protocol(const ProtocolScript& script, const OptimizerConfig& cfg);

/// Script JSON: { "initial_state": <state object or path>, "owner_of_C": "Alice",
///                "steps": [ {"kind":"SEND_C"},
///                           {"kind":"LOCAL_CHANNEL","party":"Bob","kraus":[matrix,...]} ] }
/// Relative state paths resolve against `base_dir`.
ProtocolScript script_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
nlohmann::json script_to_json(const ProtocolScript& script);
ProtocolScript read_script_file(const std::filesystem::path& path);

nlohmann::json to_json(const LedgerReport& r);

}  // namespace qcost
