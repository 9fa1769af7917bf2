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

// Randomized audit campaigns: sample generation by index and a thread pool
// whose results are collected in index order.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qcost/inequality.hpp"
#include "qcost/optim.hpp"
#include "qcost/protocol.hpp"
#include "qcost/statezoo.hpp"

namespace qcost {

enum class CampaignCheck { kCollinearity, kDpi, kMain, kPureChain, kDistanceChain, kProtocol };

CampaignCheck parse_campaign_check(std::string_view text);
std::string to_string(CampaignCheck c);

struct CampaignSpec {
  CampaignCheck check = CampaignCheck::kMain;
  EnsembleSpec ensemble;
  /// Used by dpi and distance-chain.
  DistanceKind kind = DistanceKind::kRelativeEntropy;
  OptimizerConfig cfg;

  void validate() const;
  /// BURES chain results are statistics only.
  bool hard() const;
};

/// Sample `index` of the campaign. Pair checks use ensemble samples 2i and
/// 2i+1 as rho and sigma and a Haar basis (stream i) on the last subsystem.
AuditReport campaign_sample(const CampaignSpec& spec, std::size_t index);

/// Random script over a Haar-pure initial state with unitary local steps:
/// Alice acts on AC, C goes to Bob, Bob acts on BC, C returns, Alice acts on AC again.
ProtocolScript random_protocol_script(const SubsystemDims& dims, std::uint64_t seed, std::uint64_t index);

struct CampaignResult {
  std::vector<AuditReport> reports;  // ordered by sample index
  CampaignSummary summary;
};

CampaignResult run_campaign(const CampaignSpec& spec, std::size_t threads);

/// QCOST_THREADS when set to a positive integer, else hardware concurrency.
std::size_t default_threads();

}  // namespace qcost
