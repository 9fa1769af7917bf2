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

#include "qcost/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "qcost/error.hpp"

namespace qcost {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_dims(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dims().dims() != b.dims().dims()) throw InputError("states have different subsystem dimensions");
}

// Tr[x log2 y] over the support of y.
double trace_x_log_y(const ComplexMatrix& x, const ComplexMatrix& y) {
  RealVector mu;
  ComplexMatrix w;
  kernel::eigensystem(y, mu, w);
  const ComplexMatrix xt = w.adjoint() * x * w;
  double s = 0.0;
  for (Eigen::Index j = 0; j < mu.size(); ++j) {
    if (mu(j) > kSupportCutoff) s += xt(j, j).real() * std::log2(mu(j));
  }
  return s;
}

struct Cuts {
  std::string a, b, c;
  Bipartition a_bc, ac_b;
};

Cuts tripartite_cuts(const DensityMatrix& rho) {
  const auto& l = rho.labels();
  if (l.size() != 3) throw InputError("tripartite state with labels (A,B,C) expected");
  return Cuts{l[0], l[1], l[2], Bipartition{{l[0]}, {l[1], l[2]}}, Bipartition{{l[0], l[2]}, {l[1]}}};
}

}  // namespace

std::string to_string(Soundness s) {
  switch (s) {
    case Soundness::kExact: return "exact";
    case Soundness::kUpperBound: return "upper_bound";
    case Soundness::kLowerBound: return "lower_bound";
  }
  return "exact";
}

const Quantity& AuditReport::quantity(const std::string& name) const {
  for (const auto& q : quantities) {
    if (q.name == name) return q;
  }
  throw InputError("report has no quantity " + name);
}

void AuditReport::finalize() { violated = std::isnan(slack) || slack < -tolerance; }

nlohmann::json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

nlohmann::json to_json(const AuditReport& r) {
  auto quantities = nlohmann::json::object();
  for (const auto& q : r.quantities) {
    quantities[q.name] = {{"value", json_number(q.value)}, {"tag", to_string(q.tag)}};
  }
  return {{"check_name", r.check_name}, {"state_id", r.state_id},  {"quantities", quantities},
          {"slack", json_number(r.slack)}, {"violated", r.violated}, {"tolerance", r.tolerance}};
}

AuditReport collinearity_check(const DensityMatrix& rho, const DensityMatrix& sigma,
                               const MeasurementBasis& basis, const std::string& state_id) {
  require_same_dims(rho, sigma);
  const DensityMatrix rho_m = measure_channel(rho, basis);
  const DensityMatrix sigma_m = measure_channel(sigma, basis);
  const double lhs = relative_entropy(rho, sigma_m);
  const double deficit = relative_entropy(rho, rho_m);
  const double tail = relative_entropy(rho_m, sigma_m);
  const double rhs = deficit + tail;
  double residual;
  if (std::isinf(lhs) && std::isinf(rhs)) {
    residual = 0.0;
  } else if (std::isinf(lhs) || std::isinf(rhs)) {
    residual = kInf;
  } else {
    residual = lhs - rhs;
  }
  AuditReport r;
  r.check_name = "collinearity";
  r.state_id = state_id;
  r.quantities = {{"S(rho||sigma')", lhs, Soundness::kExact},
                  {"S(rho||rho')", deficit, Soundness::kExact},
                  {"S(rho'||sigma')", tail, Soundness::kExact},
                  {"residual", residual, Soundness::kExact}};
  r.slack = -std::abs(residual);
  r.tolerance = kIdentityTol;
  r.finalize();
  return r;
}

double trace_identity_defect(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const MeasurementBasis& basis) {
  require_same_dims(rho, sigma);
  const ComplexMatrix rho_m = measure_channel(rho, basis).mat();
  const ComplexMatrix sigma_m = measure_channel(sigma, basis).mat();
  const double first = trace_x_log_y(rho.mat(), rho_m) - trace_x_log_y(rho_m, rho_m);
  const double second = trace_x_log_y(rho.mat(), sigma_m) - trace_x_log_y(rho_m, sigma_m);
  return std::max(std::abs(first), std::abs(second));
}

AuditReport dpi_check(const DensityMatrix& rho, const DensityMatrix& sigma, const MeasurementBasis& basis,
                      DistanceKind kind, const std::string& state_id) {
  require_same_dims(rho, sigma);
  const double before = distance(kind, rho, sigma);
  const double after = distance(kind, measure_channel(rho, basis), measure_channel(sigma, basis));
  AuditReport r;
  r.check_name = "dpi_" + to_string(kind);
  r.state_id = state_id;
  r.quantities = {{"D(rho,sigma)", before, Soundness::kExact}, {"D(rho',sigma')", after, Soundness::kExact}};
  if (std::isinf(before)) {
    r.slack = kInf;
  } else {
    r.slack = before - after;
  }
  r.tolerance = kAnalyticTol;
  r.finalize();
  return r;
}

AuditReport main_inequality_audit(const DensityMatrix& rho, const OptimizerConfig& cfg,
                                  const std::string& state_id) {
  const Cuts cuts = tripartite_cuts(rho);
  const double lower_e_a_bc = coherent_info_lower(rho, cuts.a_bc);
  const ReeResult ree = ree_upper(rho, cuts.ac_b, DistanceKind::kRelativeEntropy, 0, cfg);
  const DeficitResult deficit = one_way_deficit(rho, cuts.c, DistanceKind::kRelativeEntropy, cfg);
  AuditReport r;
  r.check_name = "main";
  r.state_id = state_id;
  r.quantities = {{"lower_E_A_BC", lower_e_a_bc, Soundness::kLowerBound},
                  {"upper_E_AC_B", ree.value, Soundness::kUpperBound},
                  {"upper_Delta_C_AB", deficit.value, Soundness::kUpperBound}};
  r.slack = deficit.value + ree.value - lower_e_a_bc;
  r.tolerance = kOptimizerTol;
  r.finalize();
  return r;
}

AuditReport pure_chain_check(const ComplexVector& psi, const SubsystemDims& dims, const std::string& state_id) {
  if (dims.size() != 3) throw InputError("pure chain check needs three subsystems");
  if (psi.size() != static_cast<Eigen::Index>(dims.total())) {
    throw InputError("state vector dimension does not match dims");
  }
  if (std::abs(psi.norm() - 1.0) > 1e-9) throw InputError("state vector is not normalized");
  const ComplexMatrix rho = psi * psi.adjoint();
  const auto& l = dims.labels();
  const double sa = kernel::vn_entropy(kernel::partial_trace(rho, dims, {l[1], l[2]}));
  const double sb = kernel::vn_entropy(kernel::partial_trace(rho, dims, {l[0], l[2]}));
  const double sc = kernel::vn_entropy(kernel::partial_trace(rho, dims, {l[0], l[1]}));
  const double lo = sa - std::abs(sb - sc);
  const double hi = sb + sc - sa;
  AuditReport r;
  r.check_name = "pure_chain";
  r.state_id = state_id;
  r.quantities = {{"E_A_BC", sa, Soundness::kExact},   {"E_B_AC", sb, Soundness::kExact},
                  {"E_C_AB", sc, Soundness::kExact},   {"slack_lo", lo, Soundness::kExact},
                  {"slack_hi", hi, Soundness::kExact}};
  r.slack = std::min(lo, hi);
  r.tolerance = kAnalyticTol;
  r.finalize();
  return r;
}

AuditReport distance_chain_check(const DensityMatrix& rho, const DensityMatrix& sigma,
                                 const MeasurementBasis& basis, DistanceKind kind,
                                 const std::string& state_id) {
  if (kind == DistanceKind::kRelativeEntropy) {
    throw InputError("distance chain applies to trace or bures only");
  }
  require_same_dims(rho, sigma);
  const DensityMatrix rho_m = measure_channel(rho, basis);
  const DensityMatrix sigma_m = measure_channel(sigma, basis);
  const double direct = distance(kind, rho, sigma_m);
  const double first = distance(kind, rho, rho_m);
  const double second = distance(kind, rho_m, sigma_m);
  AuditReport r;
  r.check_name = "distance_chain_" + to_string(kind);
  r.state_id = state_id;
  r.quantities = {{"D(rho,sigma')", direct, Soundness::kExact},
                  {"D(rho,rho')", first, Soundness::kExact},
                  {"D(rho',sigma')", second, Soundness::kExact}};
  r.slack = first + second - direct;
  r.tolerance = kAnalyticTol;
  r.finalize();
  return r;
}

void CampaignSummary::add(const AuditReport& r) {
  if (samples == 0) {
    min_slack = r.slack;
    max_abs_slack = std::abs(r.slack);
  } else {
    min_slack = std::min(min_slack, r.slack);
    max_abs_slack = std::max(max_abs_slack, std::abs(r.slack));
  }
  ++samples;
  if (r.violated) ++violations;
}

nlohmann::json to_json(const CampaignSummary& s) {
  return {{"check", s.check},
          {"samples", s.samples},
          {"violations", s.violations},
          {"min_slack", json_number(s.min_slack)},
          {"max_abs_slack", json_number(s.max_abs_slack)},
          {"seed", s.seed},
          {"hard", s.hard}};
}

}  // namespace qcost
