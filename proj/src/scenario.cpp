// Copyright 2026 The fogvm Authors.
//
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

#include "fogvm/scenario.hpp"

#include "json_util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

namespace fogvm {

std::string to_string(Solver s) {
  return s == Solver::Oracle ? "oracle" : "heuristic";
}

Solver parse_solver(const std::string& s) {
  if (s == "oracle") return Solver::Oracle;
  if (s == "heuristic") return Solver::Heuristic;
  throw InvalidScenario("unknown solver '" + s + "'");
}

void Scenario::expand() {
  if (vm_template) vms = expand_catalog(popularity, *vm_template);
}

namespace {

using detail::check_keys;
using detail::optional;
using detail::required;
using nlohmann::json;

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidScenario("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidScenario(path.string() + ": " + e.what());
  }
}

VmTemplate parse_template(const json& j) {
  const std::string w = "catalog.template";
  check_keys(j, {"profile", "peak_workload_pct", "baseline_pct", "rate_mbps",
                 "max_users_per_replica"},
             w);
  VmTemplate t;
  t.profile = parse_profile(optional<std::string>(j, "profile", "linear", w));
  t.peak_workload_pct = optional<double>(j, "peak_workload_pct", t.peak_workload_pct, w);
  t.baseline_pct = optional<double>(j, "baseline_pct", t.baseline_pct, w);
  t.rate_mbps = optional<double>(j, "rate_mbps", t.rate_mbps, w);
  t.max_users_per_replica =
      optional<double>(j, "max_users_per_replica", t.max_users_per_replica, w);
  return t;
}

json template_to_json(const VmTemplate& t) {
  return {{"profile", to_string(t.profile)},
          {"peak_workload_pct", t.peak_workload_pct},
          {"baseline_pct", t.baseline_pct},
          {"rate_mbps", t.rate_mbps},
          {"max_users_per_replica", t.max_users_per_replica}};
}

void parse_run(const json& j, RunConfig& r) {
  const std::string w = "run";
  check_keys(j, {"solver", "restriction", "pue_profile", "linear_mode", "sizing",
                 "grooming", "idle_optical_switches", "offline_costing",
                 "subset_mode", "exhaustive_subset_limit", "oracle_bound",
                 "online_order", "nearest_key", "seed"},
             w);
  r.solver = parse_solver(optional<std::string>(j, "solver", to_string(r.solver), w));
  r.heuristic.restriction = parse_restriction(
      optional<std::string>(j, "restriction", to_string(r.heuristic.restriction), w));
  r.pue_profile = optional<std::string>(j, "pue_profile", r.pue_profile, w);
  r.eval.linear_mode = parse_linear_mode(
      optional<std::string>(j, "linear_mode", to_string(r.eval.linear_mode), w));
  r.eval.sizing =
      parse_sizing(optional<std::string>(j, "sizing", to_string(r.eval.sizing), w));
  r.eval.grooming = parse_grooming(
      optional<std::string>(j, "grooming", to_string(r.eval.grooming), w));
  r.eval.idle_optical_switches =
      optional<bool>(j, "idle_optical_switches", r.eval.idle_optical_switches, w);
  r.heuristic.costing = parse_offline_costing(
      optional<std::string>(j, "offline_costing", to_string(r.heuristic.costing), w));
  r.heuristic.subset_mode = parse_subset_mode(
      optional<std::string>(j, "subset_mode", to_string(r.heuristic.subset_mode), w));
  r.heuristic.exhaustive_subset_limit = optional<double>(
      j, "exhaustive_subset_limit", r.heuristic.exhaustive_subset_limit, w);
  r.oracle_bound = optional<double>(j, "oracle_bound", r.oracle_bound, w);
  r.heuristic.order = parse_online_order(
      optional<std::string>(j, "online_order", to_string(r.heuristic.order), w));
  r.heuristic.nearest_key = optional<bool>(j, "nearest_key", r.heuristic.nearest_key, w);
  r.seed = optional<std::uint64_t>(j, "seed", r.seed, w);
}

json run_to_json(const RunConfig& r) {
  return {{"solver", to_string(r.solver)},
          {"restriction", to_string(r.heuristic.restriction)},
          {"pue_profile", r.pue_profile},
          {"linear_mode", to_string(r.eval.linear_mode)},
          {"sizing", to_string(r.eval.sizing)},
          {"grooming", to_string(r.eval.grooming)},
          {"idle_optical_switches", r.eval.idle_optical_switches},
          {"offline_costing", to_string(r.heuristic.costing)},
          {"subset_mode", to_string(r.heuristic.subset_mode)},
          {"exhaustive_subset_limit", r.heuristic.exhaustive_subset_limit},
          {"oracle_bound", r.oracle_bound},
          {"online_order", to_string(r.heuristic.order)},
          {"nearest_key", r.heuristic.nearest_key},
          {"seed", r.seed}};
}

void check_node_refs(const Scenario& s) {
  std::set<int> ids;
  for (const auto& n : s.topology.nodes) ids.insert(n.id);
  std::set<int> vm_ids;
  for (const auto& v : s.vms) {
    if (!vm_ids.insert(v.id).second) {
      throw InvalidScenario("duplicate vm id " + std::to_string(v.id));
    }
  }
  for (const auto& e : s.demand.entries) {
    if (!ids.contains(e.node_id)) {
      throw InvalidScenario("demand refers to unknown node " +
                            std::to_string(e.node_id));
    }
    if (!vm_ids.contains(e.vm_id)) {
      throw InvalidScenario("demand refers to unknown vm " + std::to_string(e.vm_id));
    }
    if (e.pon < 1 || e.pon > s.attachment.pons_per_node) {
      throw InvalidScenario("demand pon out of range at node " +
                            std::to_string(e.node_id));
    }
    if (e.users < 0.0) throw InvalidScenario("negative users in demand");
  }
}

}  // namespace

CoreTopologyConfig load_topology(const std::filesystem::path& path) {
  return read_json_file(path).get<CoreTopologyConfig>();
}

Scenario parse_scenario(const json& j, const std::filesystem::path& base_dir) {
  check_keys(j, {"name", "topology", "attachment", "power", "catalog",
                 "popularity", "demand", "run"},
             "scenario");
  Scenario s;
  s.name = optional<std::string>(j, "name", "", "scenario");

  const json& jt = j.at("topology");
  if (jt.is_object() && jt.contains("include")) {
    check_keys(jt, {"include"}, "topology");
    s.topology_include = required<std::string>(jt, "include", "topology");
    s.topology = load_topology(base_dir / *s.topology_include);
  } else {
    s.topology = jt.get<CoreTopologyConfig>();
  }
  if (j.contains("attachment")) s.attachment = j.at("attachment").get<AttachmentPlan>();
  s.attachment.validate();

  if (j.contains("power")) {
    json p = j.at("power");
    check_keys(p, {"core", "metro", "pon", "compute", "pue_profiles"}, "power");
    if (p.contains("pue_profiles")) {
      const json& profiles = p.at("pue_profiles");
      if (!profiles.is_object()) throw InvalidScenario("power.pue_profiles: expected an object");
      for (const auto& item : profiles.items()) {
        s.pue_profiles[item.key()] = item.value().get<Pue>();
      }
      p.erase("pue_profiles");
    }
    s.power = p.get<PowerParams>();
  }

  if (j.contains("popularity")) {
    const json& jp = j.at("popularity");
    check_keys(jp, {"users_per_pon", "groups"}, "popularity");
    s.popularity.users_per_pon =
        optional<double>(jp, "users_per_pon", s.popularity.users_per_pon, "popularity");
    for (const auto& g : jp.value("groups", json::array())) {
      check_keys(g, {"share_pct", "vm_count"}, "popularity.groups[]");
      s.popularity.groups.push_back(
          {required<double>(g, "share_pct", "popularity.groups[]"),
           required<int>(g, "vm_count", "popularity.groups[]")});
    }
  }

  const json& jc = j.at("catalog");
  check_keys(jc, {"template", "vms"}, "catalog");
  if (jc.contains("template") == jc.contains("vms")) {
    throw InvalidScenario("catalog: give exactly one of 'template' or 'vms'");
  }
  if (jc.contains("template")) {
    s.vm_template = parse_template(jc.at("template"));
    if (s.popularity.groups.empty()) {
      throw InvalidScenario("catalog.template needs popularity.groups");
    }
    s.expand();
  } else {
    s.vms = jc.at("vms").get<std::vector<VmSpec>>();
  }
  for (const auto& v : s.vms) v.validate();

  if (j.contains("demand")) {
    const json& jd = j.at("demand");
    check_keys(jd, {"mode", "total_users_per_vm", "entries"}, "demand");
    const auto mode = required<std::string>(jd, "mode", "demand");
    if (mode == "popularity") {
      s.demand.mode = DemandSpec::Mode::Popularity;
    } else if (mode == "uniform_total") {
      s.demand.mode = DemandSpec::Mode::UniformTotal;
      s.demand.total_users_per_vm =
          required<double>(jd, "total_users_per_vm", "demand");
    } else if (mode == "explicit") {
      s.demand.mode = DemandSpec::Mode::Explicit;
      for (const auto& e : jd.value("entries", json::array())) {
        const std::string w = "demand.entries[]";
        check_keys(e, {"vm", "node", "pon", "users"}, w);
        s.demand.entries.push_back({required<int>(e, "vm", w),
                                    required<int>(e, "node", w),
                                    optional<int>(e, "pon", 1, w),
                                    required<double>(e, "users", w)});
      }
    } else {
      throw InvalidScenario("demand.mode: unknown mode '" + mode + "'");
    }
  }

  if (j.contains("run")) parse_run(j.at("run"), s.run);
  check_node_refs(s);
  // Resolve the profile early so a typo fails at load time.
  pue_profile(s, s.run.pue_profile);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_json_file(path), path.parent_path());
}

json scenario_to_json(const Scenario& s) {
  json j;
  if (!s.name.empty()) j["name"] = s.name;
  if (s.topology_include) {
    j["topology"] = {{"include", *s.topology_include}};
  } else {
    j["topology"] = s.topology;
  }
  j["attachment"] = s.attachment;
  json power = s.power;
  if (!s.pue_profiles.empty()) {
    json profiles = json::object();
    for (const auto& [name, pue] : s.pue_profiles) profiles[name] = pue;
    power["pue_profiles"] = profiles;
  }
  j["power"] = power;
  if (!s.popularity.groups.empty()) {
    json groups = json::array();
    for (const auto& g : s.popularity.groups) {
      groups.push_back({{"share_pct", g.share_pct}, {"vm_count", g.vm_count}});
    }
    j["popularity"] = {{"users_per_pon", s.popularity.users_per_pon},
                       {"groups", groups}};
  }
  if (s.vm_template) {
    j["catalog"] = {{"template", template_to_json(*s.vm_template)}};
  } else {
    j["catalog"] = {{"vms", s.vms}};
  }
  switch (s.demand.mode) {
    case DemandSpec::Mode::Popularity:
      j["demand"] = {{"mode", "popularity"}};
      break;
    case DemandSpec::Mode::UniformTotal:
      j["demand"] = {{"mode", "uniform_total"},
                     {"total_users_per_vm", s.demand.total_users_per_vm}};
      break;
    case DemandSpec::Mode::Explicit: {
      json entries = json::array();
      for (const auto& e : s.demand.entries) {
        entries.push_back({{"vm", e.vm_id},
                           {"node", e.node_id},
                           {"pon", e.pon},
                           {"users", e.users}});
      }
      j["demand"] = {{"mode", "explicit"}, {"entries", entries}};
      break;
    }
  }
  j["run"] = run_to_json(s.run);
  return j;
}

Pue pue_profile(const Scenario& s, const std::string& name) {
  if (auto it = s.pue_profiles.find(name); it != s.pue_profiles.end()) {
    return it->second;
  }
  if (name == "best-practice") return best_practice_pue();
  if (name == "2014") return pue_2014();
  throw InvalidScenario("unknown pue profile '" + name + "'");
}

Instance build_instance(const Scenario& s) {
  Instance inst;
  inst.topology = std::make_shared<const CoreTopology>(s.topology);
  inst.attachment = s.attachment;
  inst.params = s.power;
  inst.params.pue = pue_profile(s, s.run.pue_profile);
  inst.params.validate();
  inst.vms = s.vms;
  inst.options = s.run.eval;

  const int n = inst.num_nodes();
  const int pons = s.attachment.pons_per_node;
  Matrix users;
  switch (s.demand.mode) {
    case DemandSpec::Mode::Popularity:
      users = derive_users(s.vms, s.popularity.users_per_pon, n, pons);
      break;
    case DemandSpec::Mode::UniformTotal:
      users = Matrix::Constant(static_cast<Eigen::Index>(s.vms.size()), n * pons,
                               uniform_users_per_pon(s.demand.total_users_per_vm,
                                                     n * pons));
      break;
    case DemandSpec::Mode::Explicit: {
      users = Matrix::Zero(static_cast<Eigen::Index>(s.vms.size()), n * pons);
      for (const auto& e : s.demand.entries) {
        const auto it = std::find_if(s.vms.begin(), s.vms.end(),
                                     [&](const VmSpec& v) { return v.id == e.vm_id; });
        const auto row = static_cast<Eigen::Index>(it - s.vms.begin());
        users(row, inst.topo().index_of(e.node_id) * pons + e.pon - 1) += e.users;
      }
      break;
    }
  }
  inst.demand = make_demand(std::move(users), s.vms, pons);
  inst.check();
  return inst;
}

Scenario random_desk_scenario(std::uint64_t seed, const DeskOptions& options) {
  std::mt19937_64 rng(seed);
  auto uniform_int = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  auto pick = [&](const auto& values) {
    return values[static_cast<std::size_t>(
        uniform_int(0, static_cast<int>(std::size(values)) - 1))];
  };

  Scenario s;
  s.name = "desk-" + std::to_string(seed);
  const int n = uniform_int(options.min_nodes, options.max_nodes);
  for (int i = 1; i <= n; ++i) s.topology.nodes.push_back({i, "n" + std::to_string(i), 0.0, 0.0});
  std::set<std::pair<int, int>> edges;
  for (int i = 2; i <= n; ++i) edges.insert({uniform_int(1, i - 1), i});
  const int extra = uniform_int(0, n - 2);
  for (int e = 0; e < extra; ++e) {
    int a = uniform_int(1, n);
    int b = uniform_int(1, n);
    if (a == b) continue;
    edges.insert({std::min(a, b), std::max(a, b)});
  }
  for (auto [a, b] : edges) {
    const double km = std::round(std::uniform_real_distribution<double>(60.0, 2600.0)(rng));
    s.topology.links.push_back({a, b, km});
  }
  for (int i = 1; i <= n; i += 2) s.topology.datacenter_sites.push_back(i);

  s.attachment.pons_per_node = 1;

  const int num_vms = uniform_int(options.min_vms, options.max_vms);
  const double peaks[] = {10.0, 50.0, 100.0};
  const double baselines[] = {0.0, 1.0, 5.0};
  const double rates[] = {0.1, 1.0, 10.0, 25.0, 100.0};
  for (int v = 1; v <= num_vms; ++v) {
    VmSpec spec;
    spec.id = v;
    spec.profile = uniform_int(0, 1) == 0 ? WorkloadProfile::Constant
                                          : WorkloadProfile::LinearWithBaseline;
    spec.peak_workload_pct = pick(peaks);
    spec.baseline_pct =
        spec.profile == WorkloadProfile::Constant ? 0.0 : pick(baselines);
    spec.rate_mbps = pick(rates);
    spec.max_users_per_replica = 800.0;
    spec.popularity_share = 0.05 * uniform_int(1, 6);
    s.vms.push_back(spec);
  }

  // Largest unit count the exhaustive search can afford, at least one per VM.
  const int cands = n + 2;
  const int max_units = std::max(
      num_vms, static_cast<int>(std::floor(std::log(options.max_search_space) /
                                           std::log(static_cast<double>(cands)))));
  const int units = uniform_int(num_vms, std::max(num_vms, max_units));
  s.demand.mode = DemandSpec::Mode::Explicit;
  std::set<std::pair<int, int>> used;
  for (int u = 0; u < units; ++u) {
    const int vm = u < num_vms ? u + 1 : uniform_int(1, num_vms);
    const int node = uniform_int(1, n);
    if (!used.insert({vm, node}).second) continue;
    const double users = uniform_int(0, 3) == 0 ? uniform_int(801, 2000)
                                                : uniform_int(1, 800);
    s.demand.entries.push_back({vm, node, 1, users});
  }

  s.run.solver = Solver::Oracle;
  s.run.pue_profile = uniform_int(0, 1) == 0 ? "best-practice" : "2014";
  s.run.eval.sizing = uniform_int(0, 1) == 0 ? Sizing::Integral : Sizing::Fractional;
  s.run.seed = seed;
  return s;
}

}  // namespace fogvm
