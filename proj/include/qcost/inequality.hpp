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

// Auditors for the cost inequality, the collinearity identity, data
// processing under measurement channels, the pure-state triangle chain and
// the generalized-distance chain. Each check yields an AuditReport.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "qcost/entanglement.hpp"
#include "qcost/measures.hpp"
#include "qcost/optim.hpp"
#include "qcost/quantumness.hpp"

namespace qcost {

enum class Soundness { kExact, kUpperBound, kLowerBound };

std::string to_string(Soundness s);

struct Quantity {
  std::string name;
  double value = 0.0;
  Soundness tag = Soundness::kExact;
};

inline constexpr double kIdentityTol = 1e-8;
inline constexpr double kAnalyticTol = 1e-9;
inline constexpr double kOptimizerTol = 1e-6;

/// violated == (slack < -tolerance). For identities the slack is -|residual|
/// and the signed residual is kept among the quantities.
struct AuditReport {
  std::string check_name;
  std::string state_id;
  std::vector<Quantity> quantities;
  double slack = 0.0;
  bool violated = false;
  double tolerance = 0.0;

  const Quantity& quantity(const std::string& name) const;
  void finalize();
};

nlohmann::json to_json(const AuditReport& r);

/// S(rho||sigma') = S(rho||rho') + S(rho'||sigma') with ' the measurement on basis.
AuditReport collinearity_check(const DensityMatrix& rho, const DensityMatrix& sigma,
                               const MeasurementBasis& basis, const std::string& state_id = "");

/// The trace identities behind the collinearity:
/// Tr[rho log rho'] = Tr[rho' log rho'] and Tr[rho log sigma'] = Tr[rho' log sigma'].
/// Returns the larger absolute defect of the two (base-2 logarithms; terms
/// outside the support of the logarithm's argument are skipped).
double trace_identity_defect(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const MeasurementBasis& basis);

/// slack = D(rho, sigma) - D(rho', sigma').
AuditReport dpi_check(const DensityMatrix& rho, const DensityMatrix& sigma, const MeasurementBasis& basis,
                      DistanceKind kind, const std::string& state_id = "");

/// Delta^{C|AB} >= E^{A|BC} - E^{AC|B}, audited with sound directions:
/// slack = upper(Delta) + upper(E^{AC|B}) - lower(E^{A|BC}).
AuditReport main_inequality_audit(const DensityMatrix& rho, const OptimizerConfig& cfg,
                                  const std::string& state_id = "");

/// |S_B - S_C| <= S_A <= S_B + S_C for a tripartite pure state.
AuditReport pure_chain_check(const ComplexVector& psi, const SubsystemDims& dims,
                             const std::string& state_id = "");

/// D(rho, sigma') <= D(rho, rho') + D(rho', sigma') for TRACE or BURES.
AuditReport distance_chain_check(const DensityMatrix& rho, const DensityMatrix& sigma,
                                 const MeasurementBasis& basis, DistanceKind kind,
                                 const std::string& state_id = "");

struct CampaignSummary {
  std::string check;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double min_slack = 0.0;
  double max_abs_slack = 0.0;
  std::uint64_t seed = 0;
  /// false when violations are recorded as statistics only
  bool hard = true;

  void add(const AuditReport& r);
};

nlohmann::json to_json(const CampaignSummary& s);

/// Non-finite doubles become the strings "inf", "-inf", "nan"; finite ones
/// are rounded to 12 significant digits.
nlohmann::json json_number(double v);

}  // namespace qcost
