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

#include "qcost/campaign.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "qcost/error.hpp"

namespace qcost {

CampaignCheck parse_campaign_check(std::string_view text) {
  if (text == "collinearity") return CampaignCheck::kCollinearity;
  if (text == "dpi") return CampaignCheck::kDpi;
  if (text == "main") return CampaignCheck::kMain;
  if (text == "pure-chain") return CampaignCheck::kPureChain;
  if (text == "distance-chain") return CampaignCheck::kDistanceChain;
  if (text == "protocol") return CampaignCheck::kProtocol;
  throw InputError("unknown campaign check: " + std::string(text));
}

std::string to_string(CampaignCheck c) {
  switch (c) {
    case CampaignCheck::kCollinearity: return "collinearity";
    case CampaignCheck::kDpi: return "dpi";
    case CampaignCheck::kMain: return "main";
    case CampaignCheck::kPureChain: return "pure-chain";
    case CampaignCheck::kDistanceChain: return "distance-chain";
    case CampaignCheck::kProtocol: return "protocol";
  }
  return "?";
}

void CampaignSpec::validate() const {
  ensemble.validate();
  cfg.validate();
  const bool tripartite = ensemble.dims.size() == 3;
  switch (check) {
    case CampaignCheck::kMain:
    case CampaignCheck::kProtocol:
      if (!tripartite) throw InputError(to_string(check) + " campaign needs three subsystems");
      break;
    case CampaignCheck::kPureChain:
      if (!tripartite) throw InputError("pure-chain campaign needs three subsystems");
      if (ensemble.family != EnsembleFamily::kHaarPure) {
        throw InputError("pure-chain campaign needs the haar-pure ensemble");
      }
      break;
    case CampaignCheck::kDistanceChain:
      if (kind == DistanceKind::kRelativeEntropy) {
        throw InputError("distance-chain campaign takes --kind trace or bures");
      }
      break;
    default:
      break;
  }
  if (check == CampaignCheck::kProtocol && ensemble.family != EnsembleFamily::kHaarPure) {
    throw InputError("protocol campaign draws Haar-pure initial states; use --ensemble haar-pure");
  }
}

bool CampaignSpec::hard() const {
  return !(check == CampaignCheck::kDistanceChain && kind == DistanceKind::kBures);
}

ProtocolScript random_protocol_script(const SubsystemDims& dims, std::uint64_t seed, std::uint64_t index) {
  if (dims.size() != 3) throw InputError("protocol scripts need three subsystems");
  const auto& l = dims.labels();
  const DensityMatrix initial = DensityMatrix::pure(haar_pure(dims, seed, index), dims);
  auto unitary_on = [&](std::vector<std::string> labels, std::uint64_t k) {
    return std::vector<ComplexMatrix>{haar_unitary(dims.dim_of(labels), seed, 4 * index + k)};
  };
  ProtocolScript s{initial, Party::kAlice, {}};
  s.steps.emplace_back(LocalChannel{Party::kAlice, unitary_on({l[0], l[2]}, 0)});
  s.steps.emplace_back(SendC{Party::kAlice});
  s.steps.emplace_back(LocalChannel{Party::kBob, unitary_on({l[1], l[2]}, 1)});
  s.steps.emplace_back(SendC{Party::kBob});
  s.steps.emplace_back(LocalChannel{Party::kAlice, unitary_on({l[0], l[2]}, 2)});
  return s;
}

namespace {

std::string sample_id(const CampaignSpec& spec, std::size_t index) {
  return to_string(spec.ensemble.family) + ":seed=" + std::to_string(spec.ensemble.seed) +
         ":i=" + std::to_string(index);
}

AuditReport protocol_report(const CampaignSpec& spec, std::size_t index) {
  const LedgerReport ledger =
      run_protocol(random_protocol_script(spec.ensemble.dims, spec.ensemble.seed, index), spec.cfg);
  AuditReport r;
  r.check_name = "protocol";
  r.state_id = sample_id(spec, index);
  double total = 0.0;
  for (std::size_t k = 0; k < ledger.deltas.size(); ++k) {
    r.quantities.push_back({"upper_Delta_" + std::to_string(k + 1), ledger.deltas[k], Soundness::kUpperBound});
    total += ledger.deltas[k];
  }
  r.quantities.push_back({"upper_E_initial", ledger.e_initial.upper, Soundness::kUpperBound});
  r.quantities.push_back({"lower_E_final", ledger.e_final.lower, Soundness::kLowerBound});
  r.quantities.push_back({"sum_Delta", total, Soundness::kUpperBound});
  r.slack = ledger.budget_slack;
  r.tolerance = kOptimizerTol;
  r.finalize();
  // A LOCC step that raises the bound pair out of order is also a violation.
  r.violated = r.violated || ledger.locc_violated;
  return r;
}

}  // namespace

AuditReport campaign_sample(const CampaignSpec& spec, std::size_t index) {
  const std::string id = sample_id(spec, index);
  const SubsystemDims& dims = spec.ensemble.dims;
  auto pair_basis = [&]() {
    const std::string& label = dims.labels().back();
    return MeasurementBasis(label, haar_unitary(dims.dim_of(label), spec.ensemble.seed, index));
  };
  switch (spec.check) {
    case CampaignCheck::kCollinearity:
      return collinearity_check(spec.ensemble.sample(2 * index), spec.ensemble.sample(2 * index + 1),
                                pair_basis(), id);
    case CampaignCheck::kDpi:
      return dpi_check(spec.ensemble.sample(2 * index), spec.ensemble.sample(2 * index + 1), pair_basis(),
                       spec.kind, id);
    case CampaignCheck::kDistanceChain:
      return distance_chain_check(spec.ensemble.sample(2 * index), spec.ensemble.sample(2 * index + 1),
                                  pair_basis(), spec.kind, id);
    case CampaignCheck::kMain:
      return main_inequality_audit(spec.ensemble.sample(index), spec.cfg, id);
    case CampaignCheck::kPureChain:
      return pure_chain_check(haar_pure(dims, spec.ensemble.seed, index), dims, id);
    case CampaignCheck::kProtocol:
      return protocol_report(spec, index);
  }
  throw InputError("unknown campaign check");
}

CampaignResult run_campaign(const CampaignSpec& spec, std::size_t threads) {
  spec.validate();
  const std::size_t n = spec.ensemble.samples;
  CampaignResult result;
  result.reports.resize(n);
  threads = std::max<std::size_t>(1, std::min(threads, n));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        result.reports[i] = campaign_sample(spec, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  result.summary.check = to_string(spec.check);
  result.summary.seed = spec.ensemble.seed;
  result.summary.hard = spec.hard();
  for (const auto& r : result.reports) result.summary.add(r);
  return result;
}

std::size_t default_threads() {
  if (const char* env = std::getenv("QCOST_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace qcost
