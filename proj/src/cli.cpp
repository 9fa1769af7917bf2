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

#include "qcost/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "CLI11.hpp"

#include "qcost/campaign.hpp"
#include "qcost/entanglement.hpp"
#include "qcost/error.hpp"
#include "qcost/inequality.hpp"
#include "qcost/measures.hpp"
#include "qcost/protocol.hpp"
#include "qcost/quantumness.hpp"
#include "qcost/state_io.hpp"
#include "qcost/statezoo.hpp"

namespace qcost {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool EtaReport::pass() const {
  for (const auto& c : criteria) {
    if (!c.pass) return false;
  }
  return !criteria.empty();
}

EtaReport eta_reproduction(const OptimizerConfig& cfg) {
  const DensityMatrix eta = eta_state();
  const SubsystemDims& dims = eta.dims();
  const MeasurementBasis comp = computational_basis("C", 2);
  constexpr double third = 1.0 / 3.0;
  constexpr auto re = DistanceKind::kRelativeEntropy;

  EtaReport r;
  r.deficit_computational = deficit_for_basis(eta, comp, re);
  r.deficit_optimized = one_way_deficit(eta, "C", re, cfg).value;
  r.ree_ac_b = ree_upper(eta, Bipartition::parse("AC|B", dims), re, 0, cfg).value;
  r.ree_ab_c = ree_upper(eta, Bipartition::parse("AB|C", dims), re, 0, cfg).value;
  r.ree_a_bc = ree_upper(eta, Bipartition::parse("A|BC", dims), re, 0, cfg).value;
  r.measured_separable = measured_separable_upper(eta, measure_channel(eta, comp), comp);
  r.ppt_ac_b = ppt_min_eigenvalue(eta, Bipartition::parse("AC|B", dims));
  r.ppt_ab_c = ppt_min_eigenvalue(eta, Bipartition::parse("AB|C", dims));

  const double inf = std::numeric_limits<double>::infinity();
  auto add = [&](std::string name, double v, double lo, double hi) {
    r.criteria.push_back({std::move(name), v, lo, hi, v >= lo && v <= hi});
  };
  add("deficit_computational", r.deficit_computational, third - 1e-9, third + 1e-9);
  add("deficit_optimized_upper", r.deficit_optimized, third - 1e-9, third + 1e-4);
  add("ree_upper_AC|B", r.ree_ac_b, -inf, 1e-3);
  add("ree_upper_AB|C", r.ree_ab_c, -inf, 1e-3);
  add("ree_upper_A|BC", r.ree_a_bc, -inf, third + 5e-3);
  add("measured_separable_upper", r.measured_separable, third - 1e-8, third + 1e-8);
  add("ppt_min_eigenvalue_AC|B", r.ppt_ac_b, -1e-9, inf);
  add("ppt_min_eigenvalue_AB|C", r.ppt_ab_c, -1e-9, inf);
  return r;
}

nlohmann::json to_json(const EtaReport& r) {
  auto criteria = nlohmann::json::array();
  for (const auto& c : r.criteria) {
    criteria.push_back({{"name", c.name},
                        {"value", json_number(c.value)},
                        {"lo", json_number(c.lo)},
                        {"hi", json_number(c.hi)},
                        {"pass", c.pass}});
  }
  return {{"deficit_computational", json_number(r.deficit_computational)},
          {"deficit_optimized_upper", json_number(r.deficit_optimized)},
          {"ree_upper_AC|B", json_number(r.ree_ac_b)},
          {"ree_upper_AB|C", json_number(r.ree_ab_c)},
          {"ree_upper_A|BC", json_number(r.ree_a_bc)},
          {"measured_separable_upper", json_number(r.measured_separable)},
          {"ppt_min_eigenvalue_AC|B", json_number(r.ppt_ac_b)},
          {"ppt_min_eigenvalue_AB|C", json_number(r.ppt_ab_c)},
          {"criteria", criteria},
          {"pass", r.pass()}};
}

namespace {

struct RunConfig {
  std::uint64_t seed = 42;
  std::size_t restarts = OptimizerConfig{}.restarts;
  std::size_t max_evals = OptimizerConfig{}.max_evals_per_start;
  double xtol = OptimizerConfig{}.xtol;
  double ftol = OptimizerConfig{}.ftol;
  std::string output;  // empty: stdout
  std::string format = "json";

  OptimizerConfig optimizer() const {
    OptimizerConfig c;
    c.seed = seed;
    c.restarts = restarts;
    c.max_evals_per_start = max_evals;
    c.xtol = xtol;
    c.ftol = ftol;
    c.validate();
    return c;
  }

  nlohmann::json to_json() const {
    return {{"seed", seed},
            {"restarts", restarts},
            {"max_evals", max_evals},
            {"xtol", xtol},
            {"ftol", ftol},
            {"output", output.empty() ? "-" : output},
            {"format", format}};
  }
};

struct Input {
  std::string name;
  std::uint64_t digest = 0;
};

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

nlohmann::json header(const std::string& command, const RunConfig& rc, const std::vector<Input>& inputs) {
  auto in = nlohmann::json::array();
  for (const auto& i : inputs) in.push_back({{"name", i.name}, {"fnv1a64", hex64(i.digest)}});
  return {{"tool", "qcost"},
          {"version", std::string(kVersion)},
          {"command", command},
          {"seed", rc.seed},
          {"config", rc.to_json()},
          {"inputs", in}};
}

// Reads a state file and records its digest.
DensityMatrix load_state(const std::string& path, std::vector<Input>& inputs) {
  const std::string bytes = slurp(path);
  inputs.push_back({path, fnv1a64(bytes)});
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
  return state_from_json(j);
}

std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (item.empty() || pos != item.size()) throw InputError("bad --dims entry \"" + item + "\"");
    dims.push_back(v);
  }
  if (dims.empty()) throw InputError("--dims is empty");
  return dims;
}

void require_json(const RunConfig& rc, const std::string& command) {
  if (rc.format != "json") {
    throw InputError("--format tsv applies to campaign summaries only, not to " + command);
  }
}

nlohmann::json vector_to_json(const ComplexVector& v) {
  auto a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({json_number(v(i).real()), json_number(v(i).imag())});
  return a;
}

nlohmann::json ensemble_to_json(const SeparableEnsemble& e) {
  auto weights = nlohmann::json::array();
  auto left = nlohmann::json::array();
  auto right = nlohmann::json::array();
  for (std::size_t k = 0; k < e.size(); ++k) {
    weights.push_back(json_number(e.weights[k]));
    left.push_back(vector_to_json(e.left_vectors[k]));
    right.push_back(vector_to_json(e.right_vectors[k]));
  }
  return {{"cut", e.cut.to_string()}, {"weights", weights}, {"left_vectors", left}, {"right_vectors", right}};
}

nlohmann::json rounded_matrix(const ComplexMatrix& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({json_number(m(i, j).real()), json_number(m(i, j).imag())});
    rows.push_back(row);
  }
  return rows;
}

// Sends text to --output or the given stream.
void emit(const RunConfig& rc, const std::string& text, std::ostream& out) {
  if (rc.output.empty() || rc.output == "-") {
    out << text;
    return;
  }
  std::ofstream f(rc.output);
  if (!f) throw InputError("cannot write " + rc.output);
  f << text;
}

void emit_json(const RunConfig& rc, const nlohmann::json& j, std::ostream& out) {
  emit(rc, j.dump(2) + "\n", out);
}

struct MeasureArgs {
  std::string state;
  std::string what = "entropy";
};

int cmd_measure(const MeasureArgs& a, const RunConfig& rc, std::ostream& out) {
  require_json(rc, "measure");
  std::vector<Input> inputs;
  const DensityMatrix rho = load_state(a.state, inputs);
  double v = 0.0;
  if (a.what == "entropy") {
    v = vn_entropy(rho);
  } else if (a.what == "purity") {
    v = rho.purity();
  } else {
    throw InputError("--what must be entropy or purity");
  }
  nlohmann::json j = {{"header", header("measure", rc, inputs)}, {"what", a.what}, {"value", json_number(v)}};
  emit_json(rc, j, out);
  return kExitOk;
}

struct DeficitArgs {
  std::string state;
  std::string subsystem;
  std::string kind = "relative_entropy";
  std::string basis = "optimize";
};

int cmd_deficit(const DeficitArgs& a, const RunConfig& rc, std::ostream& out) {
  require_json(rc, "deficit");
  std::vector<Input> inputs;
  const DensityMatrix rho = load_state(a.state, inputs);
  const DistanceKind kind = parse_distance_kind(a.kind);
  const std::string label = a.subsystem.empty() ? rho.labels().back() : a.subsystem;
  const MeasurementBasis comp = computational_basis(label, rho.dims().dim_of(label));
  const double comp_value = deficit_for_basis(rho, comp, kind);

  nlohmann::json j = {{"header", header("deficit", rc, inputs)},
                      {"subsystem", label},
                      {"kind", to_string(kind)},
                      {"basis_mode", a.basis},
                      {"computational_value", json_number(comp_value)}};
  if (a.basis == "computational") {
    j["value"] = json_number(comp_value);
    j["bound"] = "exact";
  } else if (a.basis == "optimize") {
    const DeficitResult r = one_way_deficit(rho, label, kind, rc.optimizer());
    j["value"] = json_number(r.value);
    j["bound"] = "upper";
    j["basis_unitary"] = rounded_matrix(r.basis.unitary());
    j["evals"] = r.search.evals_used;
  } else {
    throw InputError("--basis must be computational or optimize");
  }
  emit_json(rc, j, out);
  return kExitOk;
}

struct ReeArgs {
  std::string state;
  std::string cut;
  std::size_t terms = 0;
  std::string kind = "relative_entropy";
};

int cmd_ree(const ReeArgs& a, const RunConfig& rc, std::ostream& out) {
  require_json(rc, "ree");
  std::vector<Input> inputs;
  const DensityMatrix rho = load_state(a.state, inputs);
  const Bipartition cut = Bipartition::parse(a.cut, rho.dims());
  const DistanceKind kind = parse_distance_kind(a.kind);
  const ReeResult r = ree_upper(rho, cut, kind, a.terms, rc.optimizer());
  nlohmann::json j = {{"header", header("ree", rc, inputs)},
                      {"cut", cut.to_string()},
                      {"kind", to_string(kind)},
                      {"terms", r.sigma.size()},
                      {"value", json_number(r.value)},
                      {"bound", "upper"},
                      {"coherent_info_lower", json_number(coherent_info_lower(rho, cut))},
                      {"ppt_min_eigenvalue", json_number(ppt_min_eigenvalue(rho, cut))},
                      {"evals", r.search.evals_used},
                      {"ensemble", ensemble_to_json(r.sigma)}};
  emit_json(rc, j, out);
  return kExitOk;
}

int cmd_eta(const RunConfig& rc, std::ostream& out) {
  require_json(rc, "eta");
  const EtaReport r = eta_reproduction(rc.optimizer());
  nlohmann::json j = to_json(r);
  j["header"] = header("eta", rc, {});
  emit_json(rc, j, out);
  return r.pass() ? kExitOk : kExitViolation;
}

struct CampaignArgs {
  std::string check;
  std::string ensemble;  // empty: chosen by check
  std::string dims = "2,2,2";
  std::size_t samples = 100;
  std::size_t rank = 0;
  std::string kind;  // empty: chosen by check
  std::string reports;
};

int cmd_campaign(const CampaignArgs& a, const RunConfig& rc, std::ostream& out) {
  CampaignSpec spec;
  spec.check = parse_campaign_check(a.check);
  const bool wants_pure = spec.check == CampaignCheck::kPureChain || spec.check == CampaignCheck::kProtocol;
  spec.ensemble.family = parse_ensemble_family(a.ensemble.empty() ? (wants_pure ? "haar-pure" : "ginibre")
                                                                  : a.ensemble);
  spec.ensemble.dims = SubsystemDims(parse_dims(a.dims));
  spec.ensemble.samples = a.samples;
  spec.ensemble.seed = rc.seed;
  spec.ensemble.ginibre_rank = a.rank;
  if (!a.kind.empty()) {
    spec.kind = parse_distance_kind(a.kind);
  } else if (spec.check == CampaignCheck::kDistanceChain) {
    spec.kind = DistanceKind::kTrace;
  }
  spec.cfg = rc.optimizer();
  spec.validate();

  const std::string descriptor = to_string(spec.check) + ";" + to_string(spec.ensemble.family) + ";" + a.dims +
                                 ";" + std::to_string(a.samples) + ";" + std::to_string(a.rank) + ";" +
                                 to_string(spec.kind);
  const CampaignResult result = run_campaign(spec, default_threads());

  std::string jsonl;
  for (const auto& r : result.reports) jsonl += to_json(r).dump() + "\n";
  nlohmann::json summary = to_json(result.summary);
  summary["kind"] = to_string(spec.kind);
  summary["header"] = header("campaign", rc, {{"campaign:" + descriptor, fnv1a64(descriptor)}});

  if (!a.reports.empty()) {
    std::ofstream f(a.reports);
    if (!f) throw InputError("cannot write " + a.reports);
    f << jsonl;
  }
  if (rc.format == "tsv") {
    const auto& s = result.summary;
    std::ostringstream t;
    t << "check\tsamples\tviolations\tmin_slack\tmax_abs_slack\tseed\thard\n"
      << s.check << '\t' << s.samples << '\t' << s.violations << '\t' << json_number(s.min_slack).dump() << '\t'
      << json_number(s.max_abs_slack).dump() << '\t' << s.seed << '\t' << (s.hard ? "true" : "false") << '\n';
    emit(rc, t.str(), out);
  } else if (rc.format == "json") {
    emit(rc, (a.reports.empty() ? jsonl : std::string()) + summary.dump() + "\n", out);
  } else {
    throw InputError("--format must be json or tsv");
  }
  return result.summary.hard && result.summary.violations > 0 ? kExitViolation : kExitOk;
}

int cmd_protocol(const std::string& script_path, const RunConfig& rc, std::ostream& out) {
  require_json(rc, "protocol");
  const std::string bytes = slurp(script_path);
  std::vector<Input> inputs{{script_path, fnv1a64(bytes)}};
  const ProtocolScript script = read_script_file(script_path);
  const LedgerReport ledger = run_protocol(script, rc.optimizer());
  nlohmann::json j = to_json(ledger);
  j["header"] = header("protocol", rc, inputs);
  emit_json(rc, j, out);
  return ledger.violated || ledger.locc_violated ? kExitViolation : kExitOk;
}

struct GenArgs {
  std::string family;
  std::string dims = "2,2,2";
  std::size_t index = 0;
  std::size_t rank = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a, const RunConfig& rc, std::ostream& out) {
  require_json(rc, "gen");
  const SubsystemDims dims(parse_dims(a.dims));
  std::optional<DensityMatrix> rho;
  if (a.family == "ghz" || a.family == "eta") {
    if (dims.dims() != std::vector<std::size_t>{2, 2, 2}) throw InputError(a.family + " is defined on dims 2,2,2");
    rho = a.family == "ghz" ? ghz_state() : eta_state();
  } else if (a.family == "haar-pure" || a.family == "ginibre") {
    EnsembleSpec spec{parse_ensemble_family(a.family), dims, a.index + 1, rc.seed, a.rank};
    spec.validate();
    rho = spec.sample(a.index);
  } else {
    throw InputError("unknown family \"" + a.family + "\" (ghz, eta, haar-pure, ginibre)");
  }
  nlohmann::json j = state_to_json(*rho);
  // Only generator inputs go here so equal requests give identical files.
  j["generator"] = {{"tool", "qcost"},   {"version", std::string(kVersion)}, {"family", a.family},
                    {"seed", rc.seed},   {"index", a.index},                 {"rank", a.rank}};
  RunConfig target = rc;
  if (!a.out.empty()) target.output = a.out;
  emit(target, j.dump() + "\n", out);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qcost: entanglement, one-way deficit and inequality audits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  RunConfig rc;
  app.add_option("--seed", rc.seed, "RNG seed")->capture_default_str();
  app.add_option("--restarts", rc.restarts, "optimizer restarts")->capture_default_str();
  app.add_option("--max-evals", rc.max_evals, "evaluations per restart")->capture_default_str();
  app.add_option("--xtol", rc.xtol, "parameter tolerance")->capture_default_str();
  app.add_option("--ftol", rc.ftol, "objective tolerance")->capture_default_str();
  app.add_option("--output", rc.output, "output path (default stdout)");
  app.add_option("--format", rc.format, "json or tsv (tsv: campaign summary only)")
      ->check(CLI::IsMember({"json", "tsv"}))
      ->capture_default_str();

  std::function<int()> action;

  MeasureArgs measure;
  auto* m = app.add_subcommand("measure", "entropy or purity of a state file")->fallthrough();
  m->add_option("state", measure.state, "state file")->required();
  m->add_option("--what", measure.what, "entropy or purity")->check(CLI::IsMember({"entropy", "purity"}));
  m->callback([&] { action = [&] { return cmd_measure(measure, rc, out); }; });

  DeficitArgs deficit;
  auto* d = app.add_subcommand("deficit", "one-way deficit with a measurement on one subsystem")->fallthrough();
  d->add_option("state", deficit.state, "state file")->required();
  d->add_option("--subsystem", deficit.subsystem, "measured subsystem (default: last label)");
  d->add_option("--kind", deficit.kind, "relative_entropy, trace or bures")->capture_default_str();
  d->add_option("--basis", deficit.basis, "computational or optimize")
      ->check(CLI::IsMember({"computational", "optimize"}))
      ->capture_default_str();
  d->callback([&] { action = [&] { return cmd_deficit(deficit, rc, out); }; });

  ReeArgs ree;
  auto* r = app.add_subcommand("ree", "upper bound on the distance to the separable set")->fallthrough();
  r->add_option("state", ree.state, "state file")->required();
  r->add_option("--cut", ree.cut, "bipartition such as A|BC")->required();
  r->add_option("--terms", ree.terms, "ensemble size (0: (dX dY)^2)")->capture_default_str();
  r->add_option("--kind", ree.kind, "relative_entropy, trace or bures")->capture_default_str();
  r->callback([&] { action = [&] { return cmd_ree(ree, rc, out); }; });

  auto* e = app.add_subcommand("eta", "reproduce the eta example and check its thresholds")->fallthrough();
  e->callback([&] { action = [&] { return cmd_eta(rc, out); }; });

  CampaignArgs campaign;
  auto* c = app.add_subcommand("campaign", "randomized audit campaign")->fallthrough();
  c->add_option("--check", campaign.check, "collinearity, dpi, main, pure-chain, distance-chain or protocol")
      ->required();
  c->add_option("--ensemble", campaign.ensemble, "haar-pure or ginibre");
  c->add_option("--dims", campaign.dims, "comma separated dimensions")->capture_default_str();
  c->add_option("--samples", campaign.samples, "number of samples")->capture_default_str();
  c->add_option("--rank", campaign.rank, "Ginibre rank (0: full)")->capture_default_str();
  c->add_option("--kind", campaign.kind, "distance for dpi and distance-chain");
  c->add_option("--reports", campaign.reports, "write per-sample JSONL here instead of the main output");
  c->callback([&] { action = [&] { return cmd_campaign(campaign, rc, out); }; });

  std::string script;
  auto* p = app.add_subcommand("protocol", "run a distribution script and audit its budget")->fallthrough();
  p->add_option("script", script, "script file")->required();
  p->callback([&] { action = [&] { return cmd_protocol(script, rc, out); }; });

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "write a state file")->fallthrough();
  g->add_option("--family", gen.family, "ghz, eta, haar-pure or ginibre")->required();
  g->add_option("--dims", gen.dims, "comma separated dimensions")->capture_default_str();
  g->add_option("--index", gen.index, "ensemble sample index")->capture_default_str();
  g->add_option("--rank", gen.rank, "Ginibre rank (0: full)")->capture_default_str();
  g->add_option("--out", gen.out, "output path (default: --output or stdout)");
  g->callback([&] { action = [&] { return cmd_gen(gen, rc, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  try {
    return action();
  } catch (const InputError& ex) {
    err << "qcost: " << ex.what() << '\n';
    return kExitInput;
  } catch (const std::exception& ex) {
    err << "qcost: " << ex.what() << '\n';
    return kExitInput;
  }
}

}  // namespace qcost
