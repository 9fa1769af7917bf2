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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qcost/campaign.hpp"
#include "qcost/cli.hpp"
#include "qcost/entanglement.hpp"
#include "qcost/measures.hpp"
#include "qcost/protocol.hpp"
#include "qcost/quantumness.hpp"
#include "qcost/statezoo.hpp"

using namespace qcost;

namespace {

const std::filesystem::path kScripts = QCOST_SCRIPTS_DIR;
const std::filesystem::path kTestBin = QCOST_TEST_BIN_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

CampaignResult campaign(CampaignCheck check, std::size_t samples, DistanceKind kind = DistanceKind::kRelativeEntropy,
                        EnsembleFamily family = EnsembleFamily::kGinibreMixed) {
  CampaignSpec spec;
  spec.check = check;
  spec.kind = kind;
  spec.ensemble.family = family;
  spec.ensemble.samples = samples;
  spec.validate();
  return run_campaign(spec, default_threads());
}

Outcome eta() {
  const EtaReport r = eta_reproduction(OptimizerConfig{});
  std::string d;
  for (const auto& c : r.criteria) d += c.name + "=" + fmt("%.12g", c.value) + (c.pass ? " " : "(!) ");
  return {r.pass(), d};
}

Outcome collinearity() {
  const CampaignResult r = campaign(CampaignCheck::kCollinearity, 100);
  return {r.summary.max_abs_slack <= 1e-8 && r.summary.violations == 0,
          "max|slack|=" + fmt("%.3g", r.summary.max_abs_slack)};
}

Outcome dpi() {
  const CampaignResult re = campaign(CampaignCheck::kDpi, 100, DistanceKind::kRelativeEntropy);
  const CampaignResult tr = campaign(CampaignCheck::kDpi, 100, DistanceKind::kTrace);
  return {re.summary.min_slack >= -1e-9 && tr.summary.min_slack >= -1e-9,
          "min slack re=" + fmt("%.3g", re.summary.min_slack) + " trace=" + fmt("%.3g", tr.summary.min_slack)};
}

Outcome pure_chain() {
  const CampaignResult r =
      campaign(CampaignCheck::kPureChain, 1000, DistanceKind::kRelativeEntropy, EnsembleFamily::kHaarPure);
  double lo = INFINITY, hi = INFINITY;
  for (const auto& a : r.reports) {
    lo = std::min(lo, a.quantity("slack_lo").value);
    hi = std::min(hi, a.quantity("slack_hi").value);
  }
  return {lo >= -1e-9 && hi >= -1e-9, "min slack_lo=" + fmt("%.3g", lo) + " slack_hi=" + fmt("%.3g", hi)};
}

Outcome main_inequality() {
  const CampaignResult r = campaign(CampaignCheck::kMain, 200);
  return {r.summary.violations == 0, std::to_string(r.summary.violations) + " violations, min slack " +
                                         fmt("%.6g", r.summary.min_slack)};
}

Outcome calibration() {
  const SubsystemDims d({2, 2});
  const Bipartition cut = Bipartition::parse("A|B", d);
  double worst_ree = -INFINITY, below = INFINITY, worst_deficit = 0.0;
  bool ok = true;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const ComplexVector psi = haar_pure(d, 606, i);
    const double exact = oracle::schmidt_entropy(psi, 2, 2);
    const double v = ree_upper(DensityMatrix::pure(psi, d), cut, DistanceKind::kRelativeEntropy, 0, OptimizerConfig{})
                         .value;
    ok = ok && v >= exact - 1e-9 && v <= exact + 2e-3;
    worst_ree = std::max(worst_ree, v - exact);
    below = std::min(below, v - exact);
  }
  // Grid over Bloch axes (upper hemisphere). The full-sphere grid of the same
  // size is coarser in theta and is printed for reference only.
  double worst_full = 0.0, above = -INFINITY;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const DensityMatrix rho = ginibre_mixed(d, 4, 607, i);
    const double grid = oracle::deficit_grid(rho.mat());
    const double full = oracle::deficit_grid(rho.mat(), 31, 61, std::acos(-1.0));
    const double opt = one_way_deficit(rho, "A", DistanceKind::kRelativeEntropy, OptimizerConfig{}).value;
    ok = ok && std::abs(opt - grid) <= 1e-3;
    worst_deficit = std::max(worst_deficit, std::abs(opt - grid));
    worst_full = std::max(worst_full, std::abs(opt - full));
    above = std::max(above, opt - grid);
  }
  return {ok, "ree-exact in [" + fmt("%.3g", below) + ", " + fmt("%.3g", worst_ree) + "], max|deficit-grid|=" +
                  fmt("%.3g", worst_deficit) + " (max deficit-grid=" + fmt("%.3g", above) +
                  ", full-sphere grid max|diff|=" + fmt("%.3g", worst_full) + ")"};
}

Outcome ledger() {
  const LedgerReport t = run_protocol(read_script_file(kScripts / "trivial_distribution.json"), OptimizerConfig{});
  const LedgerReport rt = run_protocol(read_script_file(kScripts / "round_trip.json"), OptimizerConfig{});
  return {t.budget_slack >= -1e-6 && t.budget_slack <= 5e-3 && rt.budget_slack >= -1e-6,
          "trivial slack=" + fmt("%.6g", t.budget_slack) + " round-trip slack=" + fmt("%.6g", rt.budget_slack)};
}

Outcome properties() {
  std::string d;
  bool ok = true;
  for (const char* suite : {"test_qmat", "test_measures", "test_optim", "test_quantumness", "test_entanglement",
                            "test_statezoo", "test_inequality", "test_protocol", "test_cli"}) {
    const std::string cmd = (kTestBin / suite).string() + " --minimal > /dev/null 2>&1";
    const bool passed = std::system(cmd.c_str()) == 0;
    ok = ok && passed;
    if (!passed) d += std::string(suite) + " failed; ";
  }

  oracle::Rng rng(808);
  double worst = INFINITY;
  for (int t = 0; t < 500; ++t) {
    const ComplexMatrix a = rng.density(8), b = rng.density(8), c = rng.density(8);
    const double slack =
        kernel::trace_distance(a, b) + kernel::trace_distance(b, c) - kernel::trace_distance(a, c);
    worst = std::min(worst, slack);
  }
  ok = ok && worst >= -1e-9;
  d += "trace triangle min slack=" + fmt("%.3g", worst);

  const CampaignResult bures = campaign(CampaignCheck::kDistanceChain, 500, DistanceKind::kBures);
  d += "; bures chain (statistics only): " + std::to_string(bures.summary.violations) + "/500 below zero, min slack " +
       fmt("%.3g", bures.summary.min_slack);
  return {ok, d};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "eta reproduction", 60, eta},
      {2, "collinearity identity", 10, collinearity},
      {3, "data processing", 10, dpi},
      {4, "pure-state chain", 10, pure_chain},
      {5, "main inequality campaign", 1800, main_inequality},
      {6, "optimizer calibration", 600, calibration},
      {7, "protocol ledger", 300, ledger},
      {8, "property suites", INFINITY, properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s <= c.limit_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s criterion %d (%s): %s [%.1f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), s,
                in_time ? "" : ", over time limit");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
