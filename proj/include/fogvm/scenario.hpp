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

#ifndef FOGVM_SCENARIO_HPP
#define FOGVM_SCENARIO_HPP

#include "fogvm/evaluate.hpp"
#include "fogvm/heuristic.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fogvm {

enum class Solver { Oracle, Heuristic };

std::string to_string(Solver s);
Solver parse_solver(const std::string& s);

struct ExplicitDemand {
  int vm_id = 0;
  int node_id = 0;
  int pon = 1;  // 1-based
  double users = 0.0;
};

/// Where user counts come from.
///   popularity: round-half-up(users_per_pon * share) in every PON
///   uniform_total: total_users_per_vm spread evenly over all PONs
///   explicit: listed (vm, node, pon, users) entries, zero elsewhere
struct DemandSpec {
  enum class Mode { Popularity, UniformTotal, Explicit };
  Mode mode = Mode::Popularity;
  double total_users_per_vm = 0.0;
  std::vector<ExplicitDemand> entries;
};

struct RunConfig {
  Solver solver = Solver::Heuristic;
  std::string pue_profile = "best-practice";
  EvalOptions eval;
  HeuristicOptions heuristic;  // its restriction is the run's restriction
  double oracle_bound = kDefaultOracleBound;
  std::uint64_t seed = 1;
};

struct Scenario {
  std::string name;
  CoreTopologyConfig topology;
  std::optional<std::string> topology_include;  // kept for re-serialization
  AttachmentPlan attachment;
  PowerParams power;  // pue replaced by the selected profile when built
  std::map<std::string, Pue> pue_profiles;
  PopularityModel popularity;
  std::optional<VmTemplate> vm_template;
  std::vector<VmSpec> vms;
  DemandSpec demand;
  RunConfig run;

  Restriction restriction() const { return run.heuristic.restriction; }

  /// Regenerates `vms` from the template and popularity groups.
  void expand();
};

/// Parses a scenario document. Relative includes resolve against `base_dir`.
Scenario parse_scenario(const nlohmann::json& j,
                        const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);
nlohmann::json scenario_to_json(const Scenario& s);

CoreTopologyConfig load_topology(const std::filesystem::path& path);

/// Profiles every scenario knows: "best-practice" and "2014".
Pue pue_profile(const Scenario& s, const std::string& name);

/// Builds the evaluation instance (users, traffic, selected PUE).
Instance build_instance(const Scenario& s);

struct DeskOptions {
  int min_nodes = 4;
  int max_nodes = 6;
  int min_vms = 1;
  int max_vms = 3;
  double max_search_space = 2e5;
};

/// Random connected desk-scale scenario with sparse demand small enough for
/// the exhaustive search. Deterministic in `seed`.
Scenario random_desk_scenario(std::uint64_t seed, const DeskOptions& options = {});

}  // namespace fogvm

#endif  // FOGVM_SCENARIO_HPP
