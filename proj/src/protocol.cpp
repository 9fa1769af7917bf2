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

#include "qcost/protocol.hpp"

#include <fstream>
#include <optional>

#include "qcost/entanglement.hpp"
#include "qcost/error.hpp"
#include "qcost/inequality.hpp"
#include "qcost/quantumness.hpp"
#include "qcost/state_io.hpp"

namespace qcost {

namespace {

Bipartition cut_for(const SubsystemDims& dims, Party owner_of_c) {
  const auto& l = dims.labels();
  if (owner_of_c == Party::kAlice) return Bipartition{{l[0], l[2]}, {l[1]}};
  return Bipartition{{l[0]}, {l[1], l[2]}};
}

void require_tripartite(const DensityMatrix& rho) {
  if (rho.labels().size() != 3) throw InputError("protocol state must have three subsystems (A,B,C)");
}

}  // namespace

std::string to_string(Party p) { return p == Party::kAlice ? "Alice" : "Bob"; }

Party parse_party(std::string_view text) {
  if (text == "Alice" || text == "alice") return Party::kAlice;
  if (text == "Bob" || text == "bob") return Party::kBob;
  throw InputError("unknown party: " + std::string(text));
}

std::vector<std::string> held_labels(const SubsystemDims& dims, Party party, Party owner_of_c) {
  const auto& l = dims.labels();
  if (l.size() != 3) throw InputError("protocol state must have three subsystems (A,B,C)");
  std::vector<std::string> held;
  held.push_back(party == Party::kAlice ? l[0] : l[1]);
  if (party == owner_of_c) held.push_back(l[2]);
  return held;
}

DensityMatrix apply_kraus(const DensityMatrix& rho, const std::vector<std::string>& labels,
                          const std::vector<ComplexMatrix>& kraus) {
  if (kraus.empty()) throw InputError("a channel needs at least one Kraus operator");
  const SubsystemDims& dims = rho.dims();
  std::vector<std::string> order;
  for (const auto& l : dims.labels()) {
    if (std::find(labels.begin(), labels.end(), l) != labels.end()) order.push_back(l);
  }
  if (order.size() != labels.size()) throw InputError("channel labels must be distinct labels of the state");
  const auto d_act = static_cast<Eigen::Index>(dims.dim_of(order));
  ComplexMatrix completeness = ComplexMatrix::Zero(d_act, d_act);
  for (const auto& k : kraus) {
    if (k.rows() != d_act || k.cols() != d_act) {
      throw InputError("Kraus operator is " + std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                       ", expected " + std::to_string(d_act));
    }
    completeness += k.adjoint() * k;
  }
  if ((completeness - ComplexMatrix::Identity(d_act, d_act)).cwiseAbs().maxCoeff() > 1e-9) {
    throw InputError("Kraus operators are not trace preserving");
  }
  for (const auto& l : dims.labels()) {
    if (std::find(order.begin(), order.end(), l) == order.end()) order.push_back(l);
  }
  const SubsystemDims frame = dims.select(order);
  const ComplexMatrix m = permute_subsystems(rho.mat(), dims, order);
  const auto d_rest = static_cast<Eigen::Index>(dims.total()) / d_act;
  const ComplexMatrix eye = ComplexMatrix::Identity(d_rest, d_rest);
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (const auto& k : kraus) {
    const ComplexMatrix big = tensor_product(k, eye);
    out += big * m * big.adjoint();
  }
  return DensityMatrix(permute_subsystems(out, frame, dims.labels()), dims);
}

DensityMatrix apply_local_channel(const DensityMatrix& rho, Party party, Party owner_of_c,
                                  const std::vector<ComplexMatrix>& kraus) {
  return apply_kraus(rho, held_labels(rho.dims(), party, owner_of_c), kraus);
}

LedgerReport run_protocol(const ProtocolScript& script, const OptimizerConfig& cfg) {
  require_tripartite(script.initial_state);
  DensityMatrix rho = script.initial_state;
  const SubsystemDims dims = rho.dims();
  const std::string particle = dims.labels()[2];
  Party owner = script.initial_owner_of_c;

  // Upper bound on the entanglement of the current state across the current
  // cut, reset whenever either changes.
  std::optional<double> cached_upper;
  auto upper_now = [&]() {
    if (!cached_upper) {
      cached_upper = ree_upper(rho, cut_for(dims, owner), DistanceKind::kRelativeEntropy, 0, cfg).value;
    }
    return *cached_upper;
  };

  LedgerReport report;
  report.initial_cut = cut_for(dims, owner).to_string();
  report.e_initial = {coherent_info_lower(rho, cut_for(dims, owner)), upper_now()};

  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    if (const auto* send = std::get_if<SendC>(&script.steps[i])) {
      if (send->from && *send->from != owner) {
        throw InputError(to_string(*send->from) + " cannot send C while " + to_string(owner) + " holds it");
      }
      report.deltas.push_back(one_way_deficit(rho, particle, DistanceKind::kRelativeEntropy, cfg).value);
      if (owner == Party::kAlice) {
        ++report.sends_alice_to_bob;
        owner = Party::kBob;
      } else {
        ++report.sends_bob_to_alice;
        owner = Party::kAlice;
      }
      cached_upper.reset();
      continue;
    }
    const auto& channel = std::get<LocalChannel>(script.steps[i]);
    LoccCheck check;
    check.step = i;
    check.cut = cut_for(dims, owner).to_string();
    check.upper_before = upper_now();
    rho = apply_local_channel(rho, channel.party, owner, channel.kraus);
    cached_upper.reset();
    check.lower_after = coherent_info_lower(rho, cut_for(dims, owner));
    check.violated = check.lower_after > check.upper_before + kOptimizerTol;
    report.locc_violated = report.locc_violated || check.violated;
    report.locc_checks.push_back(check);
  }

  report.final_owner = owner;
  report.final_cut = cut_for(dims, owner).to_string();
  report.e_final = {coherent_info_lower(rho, cut_for(dims, owner)), upper_now()};
  double total = 0.0;
  for (double d : report.deltas) total += d;
  report.budget_slack = total - (report.e_final.lower - report.e_initial.upper);
  report.violated = report.budget_slack < -kOptimizerTol;
  return report;
}

ProtocolScript script_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object() || !j.contains("initial_state")) {
    throw InputError("script needs an \"initial_state\"");
  }
  try {
    const auto& st = j.at("initial_state");
    std::optional<DensityMatrix> initial;
    if (st.is_string()) {
      std::filesystem::path p = st.get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      initial = read_state_file(p);
    } else {
      initial = state_from_json(st);
    }
    require_tripartite(*initial);
    ProtocolScript script{*initial, parse_party(j.value("owner_of_C", std::string("Alice"))), {}};
    for (const auto& s : j.value("steps", nlohmann::json::array())) {
      const std::string kind = s.at("kind").get<std::string>();
      if (kind == "SEND_C") {
        SendC send;
        if (s.contains("from")) send.from = parse_party(s.at("from").get<std::string>());
        script.steps.emplace_back(send);
      } else if (kind == "LOCAL_CHANNEL") {
        LocalChannel ch;
        ch.party = parse_party(s.at("party").get<std::string>());
        for (const auto& k : s.at("kraus")) ch.kraus.push_back(matrix_from_json(k));
        script.steps.emplace_back(std::move(ch));
      } else {
        throw InputError("unknown step kind: " + kind);
      }
    }
    // Check ownership legality and channel shapes up front.
    Party owner = script.initial_owner_of_c;
    for (const auto& step : script.steps) {
      if (const auto* send = std::get_if<SendC>(&step)) {
        if (send->from && *send->from != owner) {
          throw InputError(to_string(*send->from) + " cannot send C while " + to_string(owner) + " holds it");
        }
        owner = owner == Party::kAlice ? Party::kBob : Party::kAlice;
        continue;
      }
      const auto& ch = std::get<LocalChannel>(step);
      const auto d = static_cast<Eigen::Index>(initial->dims().dim_of(held_labels(initial->dims(), ch.party, owner)));
      for (const auto& k : ch.kraus) {
        if (k.rows() != d || k.cols() != d) {
          throw InputError(to_string(ch.party) + "'s Kraus operators must be " + std::to_string(d) + "x" +
                           std::to_string(d) + " at this step");
        }
      }
    }
    return script;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed script: ") + e.what());
  }
}

nlohmann::json script_to_json(const ProtocolScript& script) {
  auto steps = nlohmann::json::array();
  for (const auto& step : script.steps) {
    if (const auto* send = std::get_if<SendC>(&step)) {
      nlohmann::json j = {{"kind", "SEND_C"}};
      if (send->from) j["from"] = to_string(*send->from);
      steps.push_back(j);
    } else {
      const auto& ch = std::get<LocalChannel>(step);
      auto kraus = nlohmann::json::array();
      for (const auto& k : ch.kraus) kraus.push_back(matrix_to_json(k));
      steps.push_back({{"kind", "LOCAL_CHANNEL"}, {"party", to_string(ch.party)}, {"kraus", kraus}});
    }
  }
  return {{"initial_state", state_to_json(script.initial_state)},
          {"owner_of_C", to_string(script.initial_owner_of_c)},
          {"steps", steps}};
}

ProtocolScript read_script_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open script " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return script_from_json(j, path.parent_path());
}

nlohmann::json to_json(const LedgerReport& r) {
  auto deltas = nlohmann::json::array();
  for (double d : r.deltas) deltas.push_back(json_number(d));
  auto checks = nlohmann::json::array();
  for (const auto& c : r.locc_checks) {
    checks.push_back({{"step", c.step},
                      {"cut", c.cut},
                      {"upper_before", json_number(c.upper_before)},
                      {"lower_after", json_number(c.lower_after)},
                      {"violated", c.violated}});
  }
  return {{"E_initial", {{"lower", json_number(r.e_initial.lower)}, {"upper", json_number(r.e_initial.upper)}}},
          {"E_final", {{"lower", json_number(r.e_final.lower)}, {"upper", json_number(r.e_final.upper)}}},
          {"initial_cut", r.initial_cut},
          {"final_cut", r.final_cut},
          {"deltas", deltas},
          {"locc_checks", checks},
          {"final_owner", to_string(r.final_owner)},
          {"sends_alice_to_bob", r.sends_alice_to_bob},
          {"sends_bob_to_alice", r.sends_bob_to_alice},
          {"budget_slack", json_number(r.budget_slack)},
          {"violated", r.violated},
          {"locc_violated", r.locc_violated}};
}

}  // namespace qcost
